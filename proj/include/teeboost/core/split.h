#ifndef TEEBOOST_CORE_SPLIT_H_
#define TEEBOOST_CORE_SPLIT_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "teeboost/core/buckets.h"
#include "teeboost/core/dataset.h"
#include "teeboost/core/thresholds.h"

namespace teeboost::core {

// g_l^2/(h_l+lambda) + g_r^2/(h_r+lambda) + g^2/(h+lambda), with g_r = g - g_l
// and h_r = h - h_l. The last term is added, not subtracted; it is constant
// within a node so the argmax is unaffected. Throws ArithmeticError when a
// denominator is not positive.
double split_score(double g_l, double h_l, double g, double h, double lambda);

// -eta * g / (h + lambda)
double leaf_weight(double g, double h, double lambda, double eta);

// Best candidate within one party.
struct LocalBest {
  bool found = false;
  double score = -std::numeric_limits<double>::infinity();
  std::uint32_t feature = 0;
  std::uint32_t threshold = 0;
};

// Scans features ascending, thresholds ascending, replacing only on a strictly
// greater score. Left sums accumulate in the ring and are decoded once per
// candidate, so every caller holding the same fixed-point sums gets the same
// bits. Single-bucket features are skipped, as are candidates whose score is
// undefined (possible only with lambda == 0).
LocalBest scan_party(std::span<const BucketSums> features, GradientTotals totals, double lambda);

// Best candidate across parties, first-wins on ties.
struct GlobalBest {
  bool found = false;
  PartyId party = 0;
  LocalBest local;

  // Parties must be offered in ascending id order.
  void offer(PartyId p, const LocalBest& candidate);
};

struct SplitDecision {
  PartyId party = 0;
  std::uint64_t record_id = 0;
  std::uint32_t feature = 0;
  std::uint32_t threshold = 0;
  double score = 0.0;
  std::vector<SampleId> left;  // ascending
};

// I_L = members whose bucket index is <= threshold; I_R the rest.
std::pair<std::vector<SampleId>, std::vector<SampleId>> partition_by_bucket(
    std::span<const std::uint32_t> bins, std::uint32_t threshold,
    std::span<const SampleId> instances);

// Plaintext reference: every party's bucket sums computed directly and scanned
// in (party, feature, threshold) order. Returns nullopt when no feature of any
// party is splittable or the node holds fewer than two samples.
std::optional<SplitDecision> find_best_split_oracle(std::span<const SampleId> instances,
                                                    std::span<const FeatureBinning> parties,
                                                    std::span<const FixedGradient> gradients,
                                                    double lambda);

}  // namespace teeboost::core

#endif  // TEEBOOST_CORE_SPLIT_H_
