#include "teeboost/federation/party.h"

#include "teeboost/common/errors.h"
#include "teeboost/core/split.h"

namespace teeboost::fed {

Party::Party(PartyId id, const core::FeatureMatrix& features, std::size_t bins,
             std::span<const std::uint8_t> labels)
    : id_(id), features_(&features), binning_(core::FeatureBinning::build(features, bins)),
      labels_(labels) {
  if (is_active() && labels.size() != features.num_rows() && features.num_features() > 0) {
    throw UsageError("active party needs one label per sample");
  }
  if (!is_active() && !labels.empty()) {
    throw UsageError("passive party " + std::to_string(id) + " must not hold labels");
  }
}

std::span<const std::uint8_t> Party::labels() const {
  if (!is_active()) throw UsageError("only the active party holds labels");
  return labels_;
}

std::uint64_t Party::record_split(std::uint32_t feature, std::uint32_t threshold) {
  if (feature >= binning_.num_features()) {
    throw ProtocolError("feature index " + std::to_string(feature) + " out of range");
  }
  const auto& t = binning_.thresholds[feature];
  if (threshold >= t.num_buckets()) {
    throw ProtocolError("threshold index " + std::to_string(threshold) + " out of range");
  }
  return records_.add({feature, threshold, t.values[threshold]});
}

std::pair<std::vector<SampleId>, std::vector<SampleId>> Party::partition_node(
    std::uint64_t record_id, std::span<const SampleId> instances) const {
  const auto& rec = records_.at(record_id);
  return core::partition_by_bucket(binning_.bins[rec.feature], rec.threshold_index, instances);
}

std::vector<bool> Party::directions(std::uint64_t record_id, std::span<const SampleId> rows,
                                    const core::FeatureMatrix& columns) const {
  const auto& rec = records_.at(record_id);
  const auto& col = columns.columns.at(rec.feature);
  std::vector<bool> out(rows.size());
  for (std::size_t j = 0; j < rows.size(); ++j) out[j] = core::goes_left(col.at(rows[j]), rec);
  return out;
}

}  // namespace teeboost::fed
