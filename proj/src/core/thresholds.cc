#include "teeboost/core/thresholds.h"

#include <algorithm>
#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::core {

FeatureThresholds build_thresholds(std::span<const double> column, std::size_t l) {
  if (l < 2) throw UsageError("build_thresholds: need l >= 2, got " + std::to_string(l));
  if (column.empty()) throw UsageError("build_thresholds: empty column");
  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  FeatureThresholds out;
  out.values.reserve(std::min(l, n));
  for (std::size_t j = 1; j <= l; ++j) {
    // rank = ceil(j * n / l), 1-based
    std::size_t rank = (j * n + l - 1) / l;
    double v = sorted[rank - 1];
    if (out.values.empty() || v > out.values.back()) out.values.push_back(v);
  }
  return out;
}

std::uint32_t bucket_assign(double x, std::span<const double> thresholds) {
  auto it = std::lower_bound(thresholds.begin(), thresholds.end(), x);
  if (it == thresholds.end()) {
    throw ContractViolation("bucket_assign: value " + std::to_string(x) +
                            " exceeds the last threshold");
  }
  return static_cast<std::uint32_t>(it - thresholds.begin());
}

FeatureBinning FeatureBinning::build(const FeatureMatrix& features, std::size_t l) {
  FeatureBinning out;
  out.thresholds.reserve(features.num_features());
  out.bins.reserve(features.num_features());
  for (const auto& column : features.columns) {
    auto t = build_thresholds(column, l);
    std::vector<std::uint32_t> b(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) b[i] = bucket_assign(column[i], t.values);
    out.thresholds.push_back(std::move(t));
    out.bins.push_back(std::move(b));
  }
  return out;
}

}  // namespace teeboost::core
