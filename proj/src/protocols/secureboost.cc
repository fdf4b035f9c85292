#include "teeboost/protocols/secureboost.h"

#include <string>

#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"

namespace teeboost::proto {

using core::PartyId;
using core::SampleId;
using crypto::PaillierCiphertext;
using fed::host;
using fed::MessageKind;
using fed::Phase;

SecureBoostStrategy::SecureBoostStrategy(ProtocolContext& ctx, crypto::PaillierRandom& active_rng,
                                         std::optional<std::uint64_t> seed)
    : ProtocolStrategy(ctx), active_rng_(active_rng) {
  for (std::size_t p = 0; p < num_parties(); ++p) {
    passive_rngs_.push_back(
        seed ? std::make_unique<crypto::PaillierRandom>(derive_seed(*seed, 1000 + p))
             : std::make_unique<crypto::PaillierRandom>());
  }
  const auto& keys = ctx_.parties.at(core::kActiveParty).keys();
  if (!keys.paillier_secret) throw ConfigError("secureboost: active party holds no secret key");
  for (std::size_t p = 1; p < num_parties(); ++p) {
    if (!ctx_.parties[p].keys().paillier_public) {
      throw ConfigError("secureboost: party " + std::to_string(p) + " has no public key");
    }
  }
}

void SecureBoostStrategy::on_begin_tree() {
  ScopedTimer timer(ctx_.timings.gradient_encrypt);
  const auto& sk = *ctx_.parties[core::kActiveParty].keys().paillier_secret;
  const auto& pk = sk.public_key();
  enc_g_.assign(gradients_.size(), {});
  enc_h_.assign(gradients_.size(), {});
  for (SampleId i : round_instances_) {
    enc_g_[i] = sk.encrypt(pk.embed(gradients_[i].g), active_rng_);
    enc_h_[i] = sk.encrypt(pk.embed(gradients_[i].h), active_rng_);
  }
  if (ctx_.record_view) {
    ctx_.view.round_gradients[round_].assign(gradients_.begin(), gradients_.end());
  }
}

Bytes SecureBoostStrategy::encrypted_gradients(std::span<const core::LevelTask> tasks) const {
  const auto& pk = *ctx_.parties[core::kActiveParty].keys().paillier_public;
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(pk.ciphertext_bytes()));
  write_node_batch(w, tasks);
  for (const auto& t : tasks) {
    for (SampleId i : t.instances) {
      if (enc_g_[i].value == 0) throw ContractViolation("gradient of a sample outside the subsample");
      pk.write(enc_g_[i], w);
      pk.write(enc_h_[i], w);
    }
  }
  return w.take();
}

Bytes SecureBoostStrategy::aggregate(PartyId p, ByteView payload) {
  fed::Party& me = party(p);
  const auto& pk = *me.keys().paillier_public;
  ByteReader r(payload);
  if (r.u32() != pk.ciphertext_bytes()) throw ProtocolError("ciphertext width mismatch");
  NodeSets nodes = read_node_batch(r);
  std::vector<std::vector<PaillierCiphertext>> g(nodes.size()), h(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    g[n].reserve(nodes[n].size());
    h[n].reserve(nodes[n].size());
    for (std::size_t j = 0; j < nodes[n].size(); ++j) {
      g[n].push_back(pk.read(r));
      h[n].push_back(pk.read(r));
    }
  }
  r.expect_done();

  const auto& b = me.binning();
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(pk.ciphertext_bytes()));
  w.u32(static_cast<std::uint32_t>(nodes.size()));
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    w.u32(static_cast<std::uint32_t>(b.num_features()));
    for (std::size_t k = 0; k < b.num_features(); ++k) {
      const std::size_t nb = b.thresholds[k].num_buckets();
      std::vector<std::optional<PaillierCiphertext>> sg(nb), sh(nb);
      for (std::size_t j = 0; j < nodes[n].size(); ++j) {
        SampleId i = nodes[n][j];
        if (i >= b.bins[k].size()) throw ProtocolError("sample id out of range");
        std::uint32_t v = b.bins[k][i];
        if (!sg[v]) {
          sg[v] = g[n][j];
          sh[v] = h[n][j];
        } else {
          pk.add_inplace(*sg[v], g[n][j]);
          pk.add_inplace(*sh[v], h[n][j]);
        }
      }
      w.u32(static_cast<std::uint32_t>(nb));
      for (std::size_t v = 0; v < nb; ++v) {
        if (!sg[v]) {
          sg[v] = pk.encrypt(0, *passive_rngs_[p]);
          sh[v] = pk.encrypt(0, *passive_rngs_[p]);
        }
        pk.write(*sg[v], w);
        pk.write(*sh[v], w);
      }
    }
  }
  return w.take();
}

std::vector<std::vector<core::BucketSums>> SecureBoostStrategy::decrypt_sums(
    PartyId p, ByteView payload, std::size_t num_nodes) const {
  const auto& sk = *ctx_.parties[core::kActiveParty].keys().paillier_secret;
  const auto& pk = sk.public_key();
  ByteReader r(payload);
  if (r.u32() != pk.ciphertext_bytes()) throw ProtocolError("ciphertext width mismatch");
  if (r.u32() != num_nodes) {
    throw ProtocolError("party " + std::to_string(p) + " answered for the wrong node count");
  }
  auto open = [&](const PaillierCiphertext& c) {
    try {
      return pk.extract(sk.decrypt(c));
    } catch (const RangeError& e) {
      throw ProtocolError("decrypted bucket sum outside the encodable range: " +
                          std::string(e.what()));
    }
  };
  std::vector<std::vector<core::BucketSums>> out(num_nodes);
  for (auto& node : out) {
    node.resize(r.u32());
    for (auto& f : node) {
      const std::uint32_t nb = r.u32();
      f.g.resize(nb);
      f.h.resize(nb);
      for (std::uint32_t v = 0; v < nb; ++v) {
        auto cg = pk.read(r);
        auto ch = pk.read(r);
        pk.check(cg);
        pk.check(ch);
        f.g[v] = open(cg);
        f.h[v] = open(ch);
      }
    }
  }
  r.expect_done();
  return out;
}

std::vector<std::optional<core::SplitDecision>> SecureBoostStrategy::run_level(
    std::uint32_t level, std::span<const core::LevelTask> tasks) {
  const PartyId active = core::kActiveParty;
  {
    ScopedTimer timer(ctx_.timings.gradient_encrypt);
    Bytes payload = encrypted_gradients(tasks);
    for (PartyId p = 1; p < num_parties(); ++p) {
      ctx_.net.send({Phase::kGradients, host(active), host(p), MessageKind::kEncryptedGradients,
                     payload});
    }
  }
  {
    ScopedTimer timer(ctx_.timings.aggregate);
    for (PartyId p = 1; p < num_parties(); ++p) {
      auto m = ctx_.net.receive(host(active), host(p), MessageKind::kEncryptedGradients);
      ctx_.net.send({Phase::kSplits, host(p), host(active), MessageKind::kEncryptedBucketSums,
                     aggregate(p, m.payload)});
    }
  }

  std::vector<core::GlobalBest> best(tasks.size());
  {
    ScopedTimer timer(ctx_.timings.decide);
    std::vector<core::GradientTotals> totals;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      totals.push_back(core::node_totals(gradients_, tasks[t].instances));
      best[t].offer(active, local_best(active, tasks[t].instances));
    }
    std::vector<NodeView> views(tasks.size());
    for (PartyId p = 1; p < num_parties(); ++p) {
      auto m = ctx_.net.receive(host(p), host(active), MessageKind::kEncryptedBucketSums);
      auto sums = decrypt_sums(p, m.payload, tasks.size());
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        const auto& b = party(p).binning();
        if (sums[t].size() != b.num_features()) {
          throw ProtocolError("party " + std::to_string(p) + " sent the wrong feature count");
        }
        best[t].offer(p, core::scan_party(sums[t], totals[t], ctx_.params.lambda));
        if (ctx_.record_view) views[t].parties[p] = std::move(sums[t]);
      }
    }
    if (ctx_.record_view) {
      for (std::size_t t = 0; t < tasks.size(); ++t) {
        views[t].round = round_;
        views[t].level = level;
        views[t].position = static_cast<std::uint32_t>(t);
        views[t].instances.assign(tasks[t].instances.begin(), tasks[t].instances.end());
        ctx_.view.nodes.push_back(std::move(views[t]));
      }
    }
  }

  std::vector<std::optional<core::SplitDecision>> out;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (!best[t].found) {
      out.emplace_back();
      continue;
    }
    out.push_back(notify_winner(static_cast<std::uint32_t>(t), best[t].party,
                                best[t].local.feature, best[t].local.threshold,
                                best[t].local.score, tasks[t].instances));
  }
  return out;
}

}  // namespace teeboost::proto
