#include "teeboost/protocols/ntee.h"

#include <algorithm>
#include <string>

#include "teeboost/common/errors.h"
#include "teeboost/federation/topology.h"

namespace teeboost::proto {

using core::PartyId;
using core::SampleId;
using fed::enclave_of;
using fed::host;
using fed::MessageKind;
using fed::Phase;

namespace {

void write_blob(ByteWriter& w, const crypto::SealedBlob& blob) {
  Bytes b = blob.serialize();
  w.u32(static_cast<std::uint32_t>(b.size()));
  w.raw(b);
}

crypto::SealedBlob read_blob(ByteReader& r) {
  std::uint32_t n = r.u32();
  return crypto::SealedBlob::parse(r.raw(n));
}

// One gradient record inside the enclave: node position, id, g, h.
constexpr std::size_t kRecordBytes = 4 + 4 + 8 + 8;

}  // namespace

std::string NTeeProgram::identity() const { return std::string(fed::kNTeeIdentity); }

void NTeeProgram::on_channel_key() {
  sealer_ = std::make_unique<crypto::Sealer>(*channel_key(), self_);
  opener_ = std::make_unique<crypto::Opener>(*channel_key());
}

Bytes NTeeProgram::invoke(std::uint32_t function, ByteView input) {
  if (function != kLoadBins && !sealer_) throw ProtocolError("n-tee enclave has no channel key");
  switch (function) {
    case kLoadBins: return load_bins(input);
    case kSealGradients: return seal_gradients(input);
    case kScan: return scan(input);
    case kDecide: return decide(input);
    case kReveal: return reveal(input);
  }
  throw ProtocolError("n-tee enclave: unknown function " + std::to_string(function));
}

Bytes NTeeProgram::load_bins(ByteView input) {
  ByteReader r(input);
  bins_.assign(r.u32(), {});
  num_buckets_.assign(bins_.size(), 0);
  for (std::size_t k = 0; k < bins_.size(); ++k) {
    num_buckets_[k] = r.u32();
    bins_[k].resize(r.u32());
    for (auto& v : bins_[k]) {
      v = r.u32();
      if (v >= num_buckets_[k]) throw ProtocolError("bin index out of range");
    }
  }
  lambda_ = r.f64();
  r.expect_done();
  return {};
}

Bytes NTeeProgram::seal_gradients(ByteView input) {
  ByteReader r(input);
  std::uint32_t recipients = r.u32();
  ByteView plaintext = r.raw(r.remaining());
  ByteWriter w;
  w.u32(recipients);
  for (std::uint32_t i = 0; i < recipients; ++i) write_blob(w, sealer_->seal(plaintext));
  return w.take();
}

Bytes NTeeProgram::scan(ByteView input) {
  Bytes plain = opener_->open(input);
  ByteReader r(plain);
  NodeSets nodes = read_node_batch(r);

  // Flatten to fixed-size records so large inputs can be paged.
  std::size_t total = 0;
  for (const auto& n : nodes) total += n.size();
  if (r.remaining() != total * 16) throw ProtocolError("sealed gradient payload has the wrong size");
  ByteWriter records(total * kRecordBytes);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    for (SampleId i : nodes[n]) {
      if (!bins_.empty() && i >= bins_.front().size()) throw ProtocolError("sample id out of range");
      records.u32(static_cast<std::uint32_t>(n));
      records.u32(i);
      records.raw(r.raw(16));
    }
  }
  Bytes flat = records.take();

  std::vector<std::vector<core::BucketSums>> sums(nodes.size());
  std::vector<core::GradientTotals> totals(nodes.size());
  for (auto& node : sums) {
    node.resize(bins_.size());
    for (std::size_t k = 0; k < bins_.size(); ++k) {
      node[k].g.assign(num_buckets_[k], 0);
      node[k].h.assign(num_buckets_[k], 0);
    }
  }
  auto accumulate = [&](ByteView chunk) {
    ByteReader cr(chunk);
    while (!cr.done()) {
      std::uint32_t n = cr.u32();
      SampleId i = cr.u32();
      crypto::RingElem g = cr.u64();
      crypto::RingElem h = cr.u64();
      totals[n].g += g;
      totals[n].h += h;
      for (std::size_t k = 0; k < bins_.size(); ++k) {
        std::uint32_t v = bins_[k][i];
        sums[n][k].g[v] += g;
        sums[n][k].h[v] += h;
      }
    }
  };
  if (memory_budget() > 0 && flat.size() > memory_budget()) {
    fed::PagedStore store(flat, memory_budget(), kRecordBytes);
    Bytes().swap(flat);
    for (std::size_t p = 0; p < store.num_pages(); ++p) accumulate(store.load(p));
    page_loads_ += store.page_loads();
  } else {
    accumulate(flat);
  }

  last_best_.clear();
  std::vector<ScoreEntry> scores;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    last_best_.push_back(core::scan_party(sums[n], totals[n], lambda_));
    scores.push_back({last_best_.back().found, last_best_.back().score});
  }
  ByteWriter w;
  write_scores(w, scores);
  return sealer_->seal(w.take()).serialize();
}

Bytes NTeeProgram::decide(ByteView input) {
  ByteReader r(input);
  std::vector<ScoreEntry> local = read_scores(r);
  std::uint32_t passive = r.u32();
  std::vector<core::GlobalBest> best(local.size());
  for (std::size_t n = 0; n < local.size(); ++n) {
    core::LocalBest lb;
    lb.found = local[n].found;
    lb.score = local[n].score;
    best[n].offer(core::kActiveParty, lb);
  }
  for (std::uint32_t p = 1; p <= passive; ++p) {
    Bytes plain = opener_->open(read_blob(r));
    ByteReader pr(plain);
    auto scores = read_scores(pr);
    pr.expect_done();
    if (scores.size() != local.size()) throw ProtocolError("best-score count mismatch");
    for (std::size_t n = 0; n < scores.size(); ++n) {
      core::LocalBest lb;
      lb.found = scores[n].found;
      lb.score = scores[n].score;
      best[n].offer(p, lb);
    }
  }
  r.expect_done();

  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(best.size()));
  for (const auto& b : best) {
    w.u8(b.found ? 1 : 0);
    w.u32(b.party);
    w.f64(b.local.score);
  }
  w.u32(passive);
  for (std::uint32_t p = 1; p <= passive; ++p) {
    ByteWriter list;
    std::vector<std::uint32_t> won;
    for (std::size_t n = 0; n < best.size(); ++n) {
      if (best[n].found && best[n].party == p) won.push_back(static_cast<std::uint32_t>(n));
    }
    list.u32(static_cast<std::uint32_t>(won.size()));
    for (auto n : won) list.u32(n);
    write_blob(w, sealer_->seal(list.take()));
  }
  return w.take();
}

Bytes NTeeProgram::reveal(ByteView input) {
  Bytes plain = opener_->open(input);
  ByteReader r(plain);
  std::vector<std::uint32_t> won(r.u32());
  for (auto& n : won) n = r.u32();
  r.expect_done();
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(won.size()));
  for (auto n : won) {
    if (n >= last_best_.size() || !last_best_[n].found) {
      throw ProtocolError("winner notice for a node this enclave did not score");
    }
    w.u32(n);
    w.u32(last_best_[n].feature);
    w.u32(last_best_[n].threshold);
  }
  return w.take();
}

NTeeStrategy::NTeeStrategy(ProtocolContext& ctx) : ProtocolStrategy(ctx) {
  for (const auto& p : ctx_.parties) {
    if (p.enclave() == nullptr || !p.enclave()->has_channel_key()) {
      throw ConfigError("ntee: party " + std::to_string(p.id()) + " has no keyed enclave");
    }
  }
}

void NTeeStrategy::on_begin_tree() {
  if (bins_loaded_) return;
  for (PartyId p = 1; p < num_parties(); ++p) {
    const auto& b = party(p).binning();
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(b.num_features()));
    for (std::size_t k = 0; k < b.num_features(); ++k) {
      w.u32(static_cast<std::uint32_t>(b.thresholds[k].num_buckets()));
      w.u32(static_cast<std::uint32_t>(b.bins[k].size()));
      for (auto v : b.bins[k]) w.u32(v);
    }
    w.f64(ctx_.params.lambda);
    party(p).enclave()->ecall(NTeeProgram::kLoadBins, w.take());
  }
  bins_loaded_ = true;
}

std::vector<std::optional<core::SplitDecision>> NTeeStrategy::run_level(
    std::uint32_t, std::span<const core::LevelTask> tasks) {
  const PartyId active = core::kActiveParty;
  const auto passive = static_cast<std::uint32_t>(num_parties() - 1);
  {
    ScopedTimer timer(ctx_.timings.gradient_encrypt);
    ByteWriter w;
    w.u32(passive);
    write_node_batch(w, tasks);
    write_gradients(w, tasks, gradients_);
    Bytes sealed = party(active).enclave()->ecall(NTeeProgram::kSealGradients, w.take());
    ByteReader r(sealed);
    if (r.u32() != passive) throw ProtocolError("enclave sealed the wrong number of copies");
    for (PartyId p = 1; p < num_parties(); ++p) {
      std::uint32_t n = r.u32();
      ByteView blob = r.raw(n);
      ctx_.net.send({Phase::kGradients, enclave_of(active), enclave_of(p),
                     MessageKind::kSealedGradients, Bytes(blob.begin(), blob.end())});
    }
  }
  {
    ScopedTimer timer(ctx_.timings.aggregate);
    for (PartyId p = 1; p < num_parties(); ++p) {
      auto m = ctx_.net.receive(enclave_of(active), enclave_of(p), MessageKind::kSealedGradients);
      ctx_.net.send({Phase::kSplits, enclave_of(p), enclave_of(active),
                     MessageKind::kSealedBestScores,
                     party(p).enclave()->ecall(NTeeProgram::kScan, m.payload)});
    }
  }

  struct Winner {
    bool found = false;
    PartyId party = 0;
    double score = 0.0;
  };
  std::vector<Winner> winners(tasks.size());
  std::vector<core::LocalBest> own(tasks.size());
  {
    ScopedTimer timer(ctx_.timings.decide);
    std::vector<ScoreEntry> local;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      own[t] = local_best(active, tasks[t].instances);
      local.push_back({own[t].found, own[t].score});
    }
    ByteWriter w;
    write_scores(w, local);
    w.u32(passive);
    for (PartyId p = 1; p < num_parties(); ++p) {
      auto m = ctx_.net.receive(enclave_of(p), enclave_of(active), MessageKind::kSealedBestScores);
      w.u32(static_cast<std::uint32_t>(m.payload.size()));
      w.raw(m.payload);
    }
    Bytes out = party(active).enclave()->ecall(NTeeProgram::kDecide, w.take());
    ByteReader r(out);
    if (r.u32() != tasks.size()) throw ProtocolError("enclave decided the wrong node count");
    for (auto& win : winners) {
      win.found = r.u8() != 0;
      win.party = r.u32();
      win.score = r.f64();
    }
    if (r.u32() != passive) throw ProtocolError("enclave produced the wrong winner lists");
    for (PartyId p = 1; p < num_parties(); ++p) {
      std::uint32_t n = r.u32();
      ByteView blob = r.raw(n);
      ctx_.net.send({Phase::kDecision, enclave_of(active), enclave_of(p),
                     MessageKind::kSealedWinners, Bytes(blob.begin(), blob.end())});
    }
    r.expect_done();
  }

  ScopedTimer timer(ctx_.timings.partition);
  std::vector<std::optional<core::SplitDecision>> out(tasks.size());
  for (PartyId p = 1; p < num_parties(); ++p) {
    auto m = ctx_.net.receive(enclave_of(active), enclave_of(p), MessageKind::kSealedWinners);
    Bytes revealed = party(p).enclave()->ecall(NTeeProgram::kReveal, m.payload);
    ByteReader r(revealed);
    std::uint32_t count = r.u32();
    for (std::uint32_t j = 0; j < count; ++j) {
      std::uint32_t n = r.u32();
      std::uint32_t feature = r.u32();
      std::uint32_t threshold = r.u32();
      if (n >= tasks.size()) throw ProtocolError("enclave revealed an unknown node");
      send_result(p, owner_commit(p, feature, threshold, tasks[n].instances));
    }
    r.expect_done();
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& win = winners[t];
    if (!win.found) continue;
    core::SplitDecision d;
    d.party = win.party;
    d.score = win.score;
    SplitResult res;
    if (win.party == active) {
      d.feature = own[t].feature;
      d.threshold = own[t].threshold;
      res = owner_commit(active, own[t].feature, own[t].threshold, tasks[t].instances);
    } else {
      res = receive_result(win.party);
    }
    d.record_id = res.record_id;
    d.left = std::move(res.left);
    out[t] = std::move(d);
  }
  return out;
}

}  // namespace teeboost::proto
