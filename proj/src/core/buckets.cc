#include "teeboost/core/buckets.h"

#include "teeboost/common/errors.h"

namespace teeboost::core {

GradientTotals node_totals(std::span<const FixedGradient> gradients,
                           std::span<const SampleId> instances) {
  GradientTotals t;
  for (SampleId i : instances) {
    t.g += gradients[i].g;
    t.h += gradients[i].h;
  }
  return t;
}

BucketSums bucket_sums(std::span<const FixedGradient> gradients,
                       std::span<const std::uint32_t> bins, std::size_t num_buckets,
                       std::span<const SampleId> instances) {
  BucketSums out;
  out.g.assign(num_buckets, 0);
  out.h.assign(num_buckets, 0);
  for (SampleId i : instances) {
    std::uint32_t v = bins[i];
    out.g[v] += gradients[i].g;
    out.h[v] += gradients[i].h;
  }
  return out;
}

BucketStats bucket_aggregate(std::span<const FixedGradient> gradients,
                             std::span<const std::uint32_t> bins, std::size_t num_buckets,
                             std::span<const SampleId> instances) {
  if (bins.size() != gradients.size()) {
    throw UsageError("bucket_aggregate: bins and gradients are not aligned");
  }
  BucketStats out;
  out.sums = bucket_sums(gradients, bins, num_buckets, instances);
  out.members.resize(num_buckets);
  for (SampleId i : instances) out.members[bins[i]].push_back(i);
  return out;
}

BucketStats bucket_aggregate(std::span<const FixedGradient> gradients,
                             std::span<const double> column, const FeatureThresholds& thresholds,
                             std::span<const SampleId> instances) {
  if (column.size() != gradients.size()) {
    throw UsageError("bucket_aggregate: column and gradients are not aligned");
  }
  std::vector<std::uint32_t> bins(column.size(), 0);
  for (SampleId i : instances) bins[i] = bucket_assign(column[i], thresholds.values);
  return bucket_aggregate(gradients, bins, thresholds.num_buckets(), instances);
}

}  // namespace teeboost::core
