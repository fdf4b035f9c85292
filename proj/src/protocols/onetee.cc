#include "teeboost/protocols/onetee.h"

#include <algorithm>
#include <string>

#include "teeboost/common/errors.h"
#include "teeboost/federation/topology.h"

namespace teeboost::proto {

using core::PartyId;
using core::SampleId;
using fed::host;
using fed::MessageKind;
using fed::Phase;

std::string OneTeeProgram::identity() const { return std::string(fed::kOneTeeIdentity); }

void OneTeeProgram::on_channel_key() {
  opener_ = std::make_unique<crypto::Opener>(*channel_key());
}

Bytes OneTeeProgram::invoke(std::uint32_t function, ByteView input) {
  switch (function) {
    case kSetPadSeed: {
      if (input.size() != sizeof(crypto::PadSeed)) throw ProtocolError("pad seed must be 16 bytes");
      crypto::PadSeed s;
      std::copy(input.begin(), input.end(), s.begin());
      seed_ = s;
      pad_round_.reset();
      return {};
    }
    case kDecide:
      return decide(input);
  }
  throw ProtocolError("1-tee enclave: unknown function " + std::to_string(function));
}

const crypto::PadVector& OneTeeProgram::pads_for(std::uint64_t round, std::size_t n) {
  if (!seed_) throw ConfigError("1-tee enclave has no pad seed");
  if (pad_round_ && round < *pad_round_) {
    throw ConfigError("pad reuse: round " + std::to_string(round) + " was already consumed");
  }
  if (!pad_round_ || round != *pad_round_ || pads_.size() != n) {
    pads_ = crypto::gen_pads(*seed_, round, n);
    pad_round_ = round;
  }
  return pads_;
}

// Input: u64 round, u32 pad length, f64 lambda, node batch, per node u64
// total g, u64 total h, u8 found, f64 score, u32 feature, u32 threshold (the
// active party's own best), u32 passive count, per passive u32 party id,
// u32 length, sealed blob.
// Output: per node u8 found, u32 party, u32 feature, u32 threshold, f64 score.
Bytes OneTeeProgram::decide(ByteView input) {
  if (!opener_) throw ProtocolError("1-tee enclave has no channel key");
  ByteReader r(input);
  std::uint64_t round = r.u64();
  std::uint32_t n = r.u32();
  double lambda = r.f64();
  NodeSets nodes = read_node_batch(r);
  const auto& pads = pads_for(round, n);

  std::vector<core::GradientTotals> totals(nodes.size());
  std::vector<core::GlobalBest> best(nodes.size());
  for (std::size_t t = 0; t < nodes.size(); ++t) {
    totals[t].g = r.u64();
    totals[t].h = r.u64();
    core::LocalBest own;
    own.found = r.u8() != 0;
    own.score = r.f64();
    own.feature = r.u32();
    own.threshold = r.u32();
    best[t].offer(core::kActiveParty, own);
  }

  std::uint32_t passive = r.u32();
  PartyId previous = core::kActiveParty;
  for (std::uint32_t j = 0; j < passive; ++j) {
    PartyId p = r.u32();
    if (p <= previous) throw ProtocolError("passive sums must arrive in ascending party order");
    previous = p;
    std::uint32_t len = r.u32();
    Bytes plain = opener_->open(r.raw(len));
    ByteReader pr(plain);
    if (pr.u32() != nodes.size()) throw ProtocolError("masked sums cover the wrong node count");
    for (std::size_t t = 0; t < nodes.size(); ++t) {
      const auto& members = nodes[t];
      std::vector<core::BucketSums> features(pr.u32());
      for (auto& f : features) {
        std::uint32_t nb = pr.u32();
        f.g.resize(nb);
        f.h.resize(nb);
        std::vector<std::uint32_t> seen;
        seen.reserve(members.size());
        for (std::uint32_t v = 0; v < nb; ++v) {
          crypto::RingElem mg = pr.u64();
          crypto::RingElem mh = pr.u64();
          std::vector<std::uint32_t> ids(pr.u32());
          for (auto& i : ids) {
            i = pr.u32();
            if (!std::binary_search(members.begin(), members.end(), i) || i >= n) {
              throw ProtocolError("bucket index set names sample " + std::to_string(i) +
                                  " outside the node");
            }
          }
          f.g[v] = crypto::unmask_sum(mg, ids, pads.g);
          f.h[v] = crypto::unmask_sum(mh, ids, pads.h);
          seen.insert(seen.end(), ids.begin(), ids.end());
        }
        std::sort(seen.begin(), seen.end());
        if (seen.size() != members.size() || !std::equal(seen.begin(), seen.end(), members.begin())) {
          throw ProtocolError("bucket index sets of party " + std::to_string(p) +
                              " do not partition the node");
        }
      }
      best[t].offer(p, core::scan_party(features, totals[t], lambda));
    }
    pr.expect_done();
  }
  r.expect_done();

  ByteWriter w;
  for (const auto& b : best) {
    w.u8(b.found ? 1 : 0);
    w.u32(b.party);
    w.u32(b.local.feature);
    w.u32(b.local.threshold);
    w.f64(b.local.score);
  }
  return w.take();
}

OneTeeStrategy::OneTeeStrategy(ProtocolContext& ctx, const crypto::PadSeed& seed)
    : ProtocolStrategy(ctx), seed_(seed) {
  auto* enclave = party(core::kActiveParty).enclave();
  if (enclave == nullptr || !enclave->has_channel_key()) {
    throw ConfigError("onetee: active party has no keyed enclave");
  }
  sealers_.resize(num_parties());
  for (PartyId p = 1; p < num_parties(); ++p) {
    const auto& key = party(p).keys().symmetric;
    if (!key) throw ConfigError("onetee: party " + std::to_string(p) + " holds no channel key");
    sealers_[p] = std::make_unique<crypto::Sealer>(*key, p);
  }
  enclave->ecall(OneTeeProgram::kSetPadSeed, ByteView(seed_.data(), seed_.size()));
}

void OneTeeStrategy::on_begin_tree() {
  if (!used_rounds_.insert(round_).second) {
    throw ConfigError("pad reuse: round " + std::to_string(round_) + " already had pads");
  }
  ScopedTimer timer(ctx_.timings.gradient_encrypt);
  pads_ = crypto::gen_pads(seed_, round_, gradients_.size());
}

Bytes OneTeeStrategy::masked_gradients(std::span<const core::LevelTask> tasks) const {
  ByteWriter w;
  write_node_batch(w, tasks);
  for (const auto& t : tasks) {
    for (SampleId i : t.instances) {
      w.u64(crypto::mask(gradients_[i].g, pads_.g[i]));
      w.u64(crypto::mask(gradients_[i].h, pads_.h[i]));
    }
  }
  return w.take();
}

Bytes OneTeeStrategy::sealed_sums(PartyId p, ByteView payload) {
  const auto& b = party(p).binning();
  ByteReader r(payload);
  NodeSets nodes = read_node_batch(r);
  std::vector<std::vector<std::pair<crypto::RingElem, crypto::RingElem>>> masked(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    for (std::size_t j = 0; j < nodes[n].size(); ++j) {
      crypto::RingElem g = r.u64();
      crypto::RingElem h = r.u64();
      masked[n].push_back({g, h});
    }
  }
  r.expect_done();

  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(nodes.size()));
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    w.u32(static_cast<std::uint32_t>(b.num_features()));
    for (std::size_t k = 0; k < b.num_features(); ++k) {
      const std::size_t nb = b.thresholds[k].num_buckets();
      std::vector<crypto::RingElem> sg(nb, 0), sh(nb, 0);
      std::vector<std::vector<SampleId>> ids(nb);
      for (std::size_t j = 0; j < nodes[n].size(); ++j) {
        SampleId i = nodes[n][j];
        if (i >= b.bins[k].size()) throw ProtocolError("sample id out of range");
        std::uint32_t v = b.bins[k][i];
        sg[v] += masked[n][j].first;
        sh[v] += masked[n][j].second;
        ids[v].push_back(i);
      }
      w.u32(static_cast<std::uint32_t>(nb));
      for (std::size_t v = 0; v < nb; ++v) {
        w.u64(sg[v]);
        w.u64(sh[v]);
        w.u32(static_cast<std::uint32_t>(ids[v].size()));
        for (SampleId i : ids[v]) w.u32(i);
      }
    }
  }
  return sealers_[p]->seal(w.take()).serialize();
}

std::vector<std::optional<core::SplitDecision>> OneTeeStrategy::run_level(
    std::uint32_t, std::span<const core::LevelTask> tasks) {
  const PartyId active = core::kActiveParty;
  {
    ScopedTimer timer(ctx_.timings.gradient_encrypt);
    Bytes payload = masked_gradients(tasks);
    for (PartyId p = 1; p < num_parties(); ++p) {
      ctx_.net.send({Phase::kGradients, host(active), host(p), MessageKind::kMaskedGradients,
                     payload});
    }
  }
  {
    ScopedTimer timer(ctx_.timings.aggregate);
    for (PartyId p = 1; p < num_parties(); ++p) {
      auto m = ctx_.net.receive(host(active), host(p), MessageKind::kMaskedGradients);
      ctx_.net.send({Phase::kSplits, host(p), host(active), MessageKind::kSealedBucketSums,
                     sealed_sums(p, m.payload)});
    }
  }

  struct Winner {
    bool found = false;
    PartyId party = 0;
    std::uint32_t feature = 0;
    std::uint32_t threshold = 0;
    double score = 0.0;
  };
  std::vector<Winner> winners(tasks.size());
  {
    ScopedTimer timer(ctx_.timings.decide);
    ByteWriter w;
    w.u64(round_);
    w.u32(static_cast<std::uint32_t>(gradients_.size()));
    w.f64(ctx_.params.lambda);
    write_node_batch(w, tasks);
    for (const auto& t : tasks) {
      auto totals = core::node_totals(gradients_, t.instances);
      auto own = local_best(active, t.instances);
      w.u64(totals.g);
      w.u64(totals.h);
      w.u8(own.found ? 1 : 0);
      w.f64(own.score);
      w.u32(own.feature);
      w.u32(own.threshold);
    }
    w.u32(static_cast<std::uint32_t>(num_parties() - 1));
    for (PartyId p = 1; p < num_parties(); ++p) {
      auto m = ctx_.net.receive(host(p), host(active), MessageKind::kSealedBucketSums);
      w.u32(p);
      w.u32(static_cast<std::uint32_t>(m.payload.size()));
      w.raw(m.payload);
    }
    Bytes out = party(active).enclave()->ecall(OneTeeProgram::kDecide, w.take());
    ByteReader r(out);
    for (auto& win : winners) {
      win.found = r.u8() != 0;
      win.party = r.u32();
      win.feature = r.u32();
      win.threshold = r.u32();
      win.score = r.f64();
    }
    r.expect_done();
  }

  std::vector<std::optional<core::SplitDecision>> out;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const auto& win = winners[t];
    if (!win.found) {
      out.emplace_back();
      continue;
    }
    out.push_back(notify_winner(static_cast<std::uint32_t>(t), win.party, win.feature,
                                win.threshold, win.score, tasks[t].instances));
  }
  return out;
}

}  // namespace teeboost::proto
