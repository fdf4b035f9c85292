#include "teeboost/protocols/strategy.h"

#include <string>

#include "teeboost/common/errors.h"
#include "teeboost/federation/inference.h"

namespace teeboost::proto {

using core::PartyId;
using core::SampleId;
using fed::host;
using fed::MessageKind;
using fed::Phase;

void ProtocolStrategy::begin_tree(std::uint32_t round,
                                  std::span<const core::FixedGradient> gradients,
                                  std::span<const SampleId> instances) {
  round_ = round;
  gradients_ = gradients;
  round_instances_.assign(instances.begin(), instances.end());
  ctx_.net.set_context(round, 0);
  on_begin_tree();
}

std::vector<std::optional<core::SplitDecision>> ProtocolStrategy::split_level(
    std::uint32_t level, std::span<const core::LevelTask> tasks) {
  ctx_.net.set_context(round_, level);
  auto decisions = run_level(level, tasks);
  LevelTrace trace{round_, level, {}, {}};
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    trace.node_sizes.push_back(static_cast<std::uint32_t>(tasks[t].instances.size()));
    NodeOutcome o;
    if (decisions[t]) {
      const auto& d = *decisions[t];
      o = {true, d.party, static_cast<std::uint32_t>(d.left.size())};
      ctx_.decisions.push_back({round_, level, tasks[t].node, d.party, d.record_id, d.score,
                                static_cast<std::uint32_t>(d.left.size())});
    }
    trace.outcomes.push_back(o);
  }
  ctx_.trace.levels.push_back(std::move(trace));
  return decisions;
}

std::vector<bool> ProtocolStrategy::route(PartyId owner, std::uint64_t record_id,
                                          std::span<const SampleId> rows) {
  if (owner != core::kActiveParty) {
    ctx_.trace.routes.push_back({round_, owner, static_cast<std::uint32_t>(rows.size())});
  }
  if (owner >= num_parties()) {
    throw ProtocolError("node owner P" + std::to_string(owner) + " is not reachable");
  }
  return fed::query_directions(ctx_.net, ctx_.parties, owner, record_id, rows,
                               ctx_.parties[owner].features());
}

std::vector<core::BucketSums> ProtocolStrategy::local_sums(
    PartyId p, std::span<const SampleId> instances) const {
  const auto& b = ctx_.parties.at(p).binning();
  std::vector<core::BucketSums> out;
  out.reserve(b.num_features());
  for (std::size_t k = 0; k < b.num_features(); ++k) {
    out.push_back(core::bucket_sums(gradients_, b.bins[k], b.thresholds[k].num_buckets(),
                                    instances));
  }
  return out;
}

core::LocalBest ProtocolStrategy::local_best(PartyId p,
                                             std::span<const SampleId> instances) const {
  return core::scan_party(local_sums(p, instances), core::node_totals(gradients_, instances),
                          ctx_.params.lambda);
}

SplitResult ProtocolStrategy::owner_commit(PartyId owner, std::uint32_t feature,
                                           std::uint32_t threshold,
                                           std::span<const SampleId> instances) {
  fed::Party& p = party(owner);
  SplitResult r;
  r.record_id = p.record_split(feature, threshold);
  r.left = p.partition_node(r.record_id, instances).first;
  return r;
}

void ProtocolStrategy::send_result(PartyId owner, const SplitResult& result) {
  ctx_.net.send({Phase::kDecision, host(owner), host(core::kActiveParty),
                 MessageKind::kSplitResult, encode_split_result(result)});
}

SplitResult ProtocolStrategy::receive_result(PartyId owner) {
  auto m = ctx_.net.receive(host(owner), host(core::kActiveParty), MessageKind::kSplitResult);
  return decode_split_result(m.payload);
}

core::SplitDecision ProtocolStrategy::notify_winner(std::uint32_t position, PartyId winner,
                                                    std::uint32_t feature,
                                                    std::uint32_t threshold, double score,
                                                    std::span<const SampleId> instances) {
  ScopedTimer timer(ctx_.timings.partition);
  core::SplitDecision d;
  d.party = winner;
  d.feature = feature;
  d.threshold = threshold;
  d.score = score;
  SplitResult r;
  if (winner == core::kActiveParty) {
    r = owner_commit(winner, feature, threshold, instances);
  } else {
    ctx_.net.send({Phase::kDecision, host(core::kActiveParty), host(winner),
                   MessageKind::kSplitIndices,
                   encode_split_indices({position, feature, threshold})});
    auto m = ctx_.net.receive(host(core::kActiveParty), host(winner), MessageKind::kSplitIndices);
    auto idx = decode_split_indices(m.payload);
    send_result(winner, owner_commit(winner, idx.feature, idx.threshold, instances));
    r = receive_result(winner);
  }
  d.record_id = r.record_id;
  d.left = std::move(r.left);
  return d;
}

std::vector<bool> PlaintextStrategy::route(PartyId owner, std::uint64_t record_id,
                                           std::span<const SampleId> rows) {
  if (owner >= num_parties()) {
    throw ProtocolError("node owner P" + std::to_string(owner) + " is not reachable");
  }
  const auto& p = ctx_.parties[owner];
  return p.directions(record_id, rows, p.features());
}

std::vector<std::optional<core::SplitDecision>> PlaintextStrategy::run_level(
    std::uint32_t, std::span<const core::LevelTask> tasks) {
  std::vector<std::optional<core::SplitDecision>> out;
  for (const auto& task : tasks) {
    core::GlobalBest best;
    {
      ScopedTimer timer(ctx_.timings.decide);
      if (task.instances.size() >= 2) {
        for (PartyId p = 0; p < num_parties(); ++p) best.offer(p, local_best(p, task.instances));
      }
    }
    if (!best.found) {
      out.emplace_back();
      continue;
    }
    ScopedTimer timer(ctx_.timings.partition);
    auto r = owner_commit(best.party, best.local.feature, best.local.threshold, task.instances);
    core::SplitDecision d;
    d.party = best.party;
    d.record_id = r.record_id;
    d.feature = best.local.feature;
    d.threshold = best.local.threshold;
    d.score = best.local.score;
    d.left = std::move(r.left);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace teeboost::proto
