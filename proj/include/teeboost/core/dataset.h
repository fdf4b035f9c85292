#ifndef TEEBOOST_CORE_DATASET_H_
#define TEEBOOST_CORE_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace teeboost::core {

// Row index into the aligned sample list. Every party addresses the same
// sample with the same SampleId.
using SampleId = std::uint32_t;
using PartyId = std::uint32_t;

inline constexpr PartyId kActiveParty = 0;

// Column-major feature block held by one party.
struct FeatureMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t num_features() const { return columns.size(); }
  std::size_t num_rows() const { return columns.empty() ? 0 : columns.front().size(); }
  double at(std::size_t row, std::size_t feature) const { return columns[feature][row]; }
};

// Samples aligned across parties; party 0 is the active party and the only
// holder of labels.
class VerticalDataset {
 public:
  VerticalDataset() = default;
  VerticalDataset(std::vector<std::string> sample_ids, std::vector<FeatureMatrix> parties,
                  std::vector<std::uint8_t> labels);

  std::size_t num_samples() const { return sample_ids_.size(); }
  std::size_t num_parties() const { return parties_.size(); }
  std::size_t num_features() const;

  const std::vector<std::string>& sample_ids() const { return sample_ids_; }
  const FeatureMatrix& party(PartyId id) const { return parties_.at(id); }
  std::span<const std::uint8_t> labels() const { return labels_; }

  // Rows `rows` in the given order, renumbered 0..rows.size()-1.
  VerticalDataset select(std::span<const SampleId> rows) const;

 private:
  std::vector<std::string> sample_ids_;
  std::vector<FeatureMatrix> parties_;
  std::vector<std::uint8_t> labels_;
};

}  // namespace teeboost::core

#endif  // TEEBOOST_CORE_DATASET_H_
