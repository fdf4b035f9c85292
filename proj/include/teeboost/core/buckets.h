#ifndef TEEBOOST_CORE_BUCKETS_H_
#define TEEBOOST_CORE_BUCKETS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/core/dataset.h"
#include "teeboost/core/gradients.h"
#include "teeboost/core/thresholds.h"

namespace teeboost::core {

// Per-bucket fixed-point gradient sums of one feature.
struct BucketSums {
  std::vector<crypto::RingElem> g;
  std::vector<crypto::RingElem> h;

  std::size_t size() const { return g.size(); }
};

// BucketSums plus the member ids of every bucket, ascending.
struct BucketStats {
  BucketSums sums;
  std::vector<std::vector<SampleId>> members;
};

struct GradientTotals {
  crypto::RingElem g = 0;
  crypto::RingElem h = 0;
};

// `gradients` is indexed by SampleId; `instances` must be ascending.
GradientTotals node_totals(std::span<const FixedGradient> gradients,
                           std::span<const SampleId> instances);

BucketSums bucket_sums(std::span<const FixedGradient> gradients,
                       std::span<const std::uint32_t> bins, std::size_t num_buckets,
                       std::span<const SampleId> instances);

BucketStats bucket_aggregate(std::span<const FixedGradient> gradients,
                             std::span<const std::uint32_t> bins, std::size_t num_buckets,
                             std::span<const SampleId> instances);

// Same as above starting from raw feature values.
BucketStats bucket_aggregate(std::span<const FixedGradient> gradients,
                             std::span<const double> column, const FeatureThresholds& thresholds,
                             std::span<const SampleId> instances);

}  // namespace teeboost::core

#endif  // TEEBOOST_CORE_BUCKETS_H_
