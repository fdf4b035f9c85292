#ifndef TEEBOOST_CORE_BOOSTER_H_
#define TEEBOOST_CORE_BOOSTER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "teeboost/core/gradients.h"
#include "teeboost/core/split.h"
#include "teeboost/core/tree.h"

namespace teeboost::core {

struct Hyperparams {
  int max_depth = 3;
  double learning_rate = 0.3;
  double subsample = 0.8;
  double lambda = 1.0;
  int n_trees = 5;
  std::size_t bins = 33;
  std::uint64_t seed = 0;

  // Throws UsageError on out-of-range values.
  void validate() const;
};

// One node awaiting a split at the current level.
struct LevelTask {
  std::int32_t node = 0;
  std::span<const SampleId> instances;  // ascending
};

// How the active party finds splits and routes samples. Implementations wrap
// one protocol; the boosting loop itself is shared.
class SplitStrategy {
 public:
  virtual ~SplitStrategy() = default;

  // Called once per boosting round before any level. `gradients` is indexed by
  // SampleId and covers every training row; `instances` is the round's
  // subsample, ascending.
  virtual void begin_tree(std::uint32_t round, std::span<const FixedGradient> gradients,
                          std::span<const SampleId> instances) = 0;

  // Splits every task of one tree level. The owning party has already stored
  // its record when a decision comes back.
  virtual std::vector<std::optional<SplitDecision>> split_level(
      std::uint32_t level, std::span<const LevelTask> tasks) = 0;

  // Asks the owner of `record_id` which of `rows` go left.
  virtual std::vector<bool> route(PartyId owner, std::uint64_t record_id,
                                  std::span<const SampleId> rows) = 0;
};

struct TrainResult {
  BoostedModel model;
  std::vector<double> logits;  // training-set predictions after the last tree
};

// Seeded shuffle-and-truncate, returned ascending. Keeps floor(fraction * n)
// rows, at least one.
std::vector<SampleId> subsample_rows(std::size_t n, double fraction, std::uint64_t seed,
                                     std::uint32_t round);

// `base_margin`, when given, is a per-row logit offset added before the first
// round (e.g. the score of an earlier model). It is not part of the model.
TrainResult train(std::span<const std::uint8_t> labels, const Hyperparams& params,
                  SplitStrategy& strategy, std::span<const double> base_margin = {});

}  // namespace teeboost::core

#endif  // TEEBOOST_CORE_BOOSTER_H_
