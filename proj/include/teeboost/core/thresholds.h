#ifndef TEEBOOST_CORE_THRESHOLDS_H_
#define TEEBOOST_CORE_THRESHOLDS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/core/dataset.h"

namespace teeboost::core {

// Sorted cut points s_0 < s_1 < ... < s_{l-1} for one feature, with an
// implicit -inf below s_0. Bucket v holds values in (s_{v-1}, s_v].
struct FeatureThresholds {
  std::vector<double> values;

  std::size_t num_buckets() const { return values.size(); }
  // A single bucket means the feature cannot separate samples.
  bool splittable() const { return values.size() >= 2; }
};

// Nearest-rank quantiles at j/l for j = 1..l, duplicates collapsed. The last
// threshold is always the column maximum.
FeatureThresholds build_thresholds(std::span<const double> column, std::size_t l);

// Unique v with s_v >= x > s_{v-1}. x above the last threshold is a
// ContractViolation.
std::uint32_t bucket_assign(double x, std::span<const double> thresholds);

// Thresholds plus precomputed bucket index of every sample, per feature.
struct FeatureBinning {
  std::vector<FeatureThresholds> thresholds;
  std::vector<std::vector<std::uint32_t>> bins;  // [feature][sample]

  std::size_t num_features() const { return thresholds.size(); }

  static FeatureBinning build(const FeatureMatrix& features, std::size_t l);
};

}  // namespace teeboost::core

#endif  // TEEBOOST_CORE_THRESHOLDS_H_
