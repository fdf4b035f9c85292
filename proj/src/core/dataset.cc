#include "teeboost/core/dataset.h"

#include <cmath>

#include "teeboost/common/errors.h"

namespace teeboost::core {

VerticalDataset::VerticalDataset(std::vector<std::string> sample_ids,
                                 std::vector<FeatureMatrix> parties,
                                 std::vector<std::uint8_t> labels)
    : sample_ids_(std::move(sample_ids)), parties_(std::move(parties)), labels_(std::move(labels)) {
  if (parties_.empty()) throw UsageError("dataset needs at least the active party");
  const std::size_t n = sample_ids_.size();
  if (labels_.size() != n) {
    throw UsageError("label count " + std::to_string(labels_.size()) + " != sample count " +
                     std::to_string(n));
  }
  for (auto y : labels_) {
    if (y > 1) throw UsageError("labels must be 0 or 1");
  }
  for (std::size_t p = 0; p < parties_.size(); ++p) {
    const auto& m = parties_[p];
    if (m.names.size() != m.columns.size()) {
      throw UsageError("party " + std::to_string(p) + ": column names do not match columns");
    }
    for (std::size_t k = 0; k < m.columns.size(); ++k) {
      if (m.columns[k].size() != n) {
        throw UsageError("party " + std::to_string(p) + " feature " + m.names[k] + " has " +
                         std::to_string(m.columns[k].size()) + " rows, expected " +
                         std::to_string(n));
      }
      for (double v : m.columns[k]) {
        if (!std::isfinite(v)) {
          throw UsageError("party " + std::to_string(p) + " feature " + m.names[k] +
                           " has a non-finite value");
        }
      }
    }
  }
}

std::size_t VerticalDataset::num_features() const {
  std::size_t d = 0;
  for (const auto& p : parties_) d += p.num_features();
  return d;
}

VerticalDataset VerticalDataset::select(std::span<const SampleId> rows) const {
  std::vector<std::string> ids;
  std::vector<std::uint8_t> labels;
  ids.reserve(rows.size());
  labels.reserve(rows.size());
  for (SampleId r : rows) {
    ids.push_back(sample_ids_.at(r));
    labels.push_back(labels_[r]);
  }
  std::vector<FeatureMatrix> parties;
  for (const auto& m : parties_) {
    FeatureMatrix out;
    out.names = m.names;
    for (const auto& col : m.columns) {
      std::vector<double> c;
      c.reserve(rows.size());
      for (SampleId r : rows) c.push_back(col[r]);
      out.columns.push_back(std::move(c));
    }
    parties.push_back(std::move(out));
  }
  return VerticalDataset(std::move(ids), std::move(parties), std::move(labels));
}

}  // namespace teeboost::core
