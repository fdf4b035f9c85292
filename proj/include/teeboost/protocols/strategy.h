#ifndef TEEBOOST_PROTOCOLS_STRATEGY_H_
#define TEEBOOST_PROTOCOLS_STRATEGY_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "teeboost/core/booster.h"
#include "teeboost/federation/channel.h"
#include "teeboost/federation/party.h"
#include "teeboost/protocols/adversary_view.h"
#include "teeboost/protocols/wire.h"

namespace teeboost::proto {

// Wall time per protocol step, in seconds.
struct PhaseTimings {
  double gradient_encrypt = 0.0;
  double aggregate = 0.0;
  double decide = 0.0;
  double partition = 0.0;

  double total() const { return gradient_encrypt + aggregate + decide + partition; }
};

class ScopedTimer {
 public:
  explicit ScopedTimer(double& sink) : sink_(sink), start_(std::chrono::steady_clock::now()) {}
  ~ScopedTimer() {
    sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  ScopedTimer(const ScopedTimer&) = delete;
  ScopedTimer& operator=(const ScopedTimer&) = delete;

 private:
  double& sink_;
  std::chrono::steady_clock::time_point start_;
};

// Shape of one tree level: what the closed-form byte accounting needs.
struct NodeOutcome {
  bool split = false;
  core::PartyId party = 0;
  std::uint32_t left_size = 0;
};

struct LevelTrace {
  std::uint32_t round = 0;
  std::uint32_t level = 0;
  std::vector<std::uint32_t> node_sizes;
  std::vector<NodeOutcome> outcomes;
};

struct RouteTrace {
  std::uint32_t round = 0;
  core::PartyId owner = 0;
  std::uint32_t rows = 0;
};

struct RunTrace {
  std::vector<LevelTrace> levels;
  std::vector<RouteTrace> routes;
};

struct DecisionRecord {
  std::uint32_t round = 0;
  std::uint32_t level = 0;
  std::int32_t node = 0;
  core::PartyId party = 0;
  std::uint64_t record_id = 0;
  double score = 0.0;
  std::uint32_t left_size = 0;
};

// Per-run state shared by a strategy and whoever drives it.
struct ProtocolContext {
  fed::Network& net;
  std::vector<fed::Party>& parties;
  core::Hyperparams params;
  PhaseTimings timings;
  RunTrace trace;
  std::vector<DecisionRecord> decisions;
  AdversaryView view;
  bool record_view = true;
};

// Common plumbing for the protocol strategies: network context, tracing,
// owner-side commit of a winning split, and federated routing.
class ProtocolStrategy : public core::SplitStrategy {
 public:
  explicit ProtocolStrategy(ProtocolContext& ctx) : ctx_(ctx) {}

  void begin_tree(std::uint32_t round, std::span<const core::FixedGradient> gradients,
                  std::span<const core::SampleId> instances) final;
  std::vector<std::optional<core::SplitDecision>> split_level(
      std::uint32_t level, std::span<const core::LevelTask> tasks) final;
  std::vector<bool> route(core::PartyId owner, std::uint64_t record_id,
                          std::span<const core::SampleId> rows) override;

 protected:
  virtual void on_begin_tree() {}
  virtual std::vector<std::optional<core::SplitDecision>> run_level(
      std::uint32_t level, std::span<const core::LevelTask> tasks) = 0;

  std::size_t num_parties() const { return ctx_.parties.size(); }
  fed::Party& party(core::PartyId p) { return ctx_.parties.at(p); }

  // Plaintext bucket sums of every feature of `p` over `instances`.
  std::vector<core::BucketSums> local_sums(core::PartyId p,
                                           std::span<const core::SampleId> instances) const;
  core::LocalBest local_best(core::PartyId p, std::span<const core::SampleId> instances) const;

  // Owner stores the split and partitions the node.
  SplitResult owner_commit(core::PartyId owner, std::uint32_t feature, std::uint32_t threshold,
                           std::span<const core::SampleId> instances);
  // Active sends SplitIndices to a passive winner, which commits and answers
  // with SplitResult. Winner 0 commits locally.
  core::SplitDecision notify_winner(std::uint32_t position, core::PartyId winner,
                                    std::uint32_t feature, std::uint32_t threshold, double score,
                                    std::span<const core::SampleId> instances);
  // Passive owner sends a SplitResult it already computed.
  void send_result(core::PartyId owner, const SplitResult& result);
  SplitResult receive_result(core::PartyId owner);

  ProtocolContext& ctx_;
  std::uint32_t round_ = 0;
  std::span<const core::FixedGradient> gradients_;
  std::vector<core::SampleId> round_instances_;
};

// Splits with every party's data in one place; no traffic at all.
class PlaintextStrategy final : public ProtocolStrategy {
 public:
  using ProtocolStrategy::ProtocolStrategy;
  std::vector<bool> route(core::PartyId owner, std::uint64_t record_id,
                          std::span<const core::SampleId> rows) override;

 protected:
  std::vector<std::optional<core::SplitDecision>> run_level(
      std::uint32_t level, std::span<const core::LevelTask> tasks) override;
};

}  // namespace teeboost::proto

#endif  // TEEBOOST_PROTOCOLS_STRATEGY_H_
