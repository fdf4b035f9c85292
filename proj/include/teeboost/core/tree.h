#ifndef TEEBOOST_CORE_TREE_H_
#define TEEBOOST_CORE_TREE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teeboost/core/dataset.h"

namespace teeboost::core {

// What the owning party stores privately under a record id.
struct SplitRecord {
  std::uint32_t feature = 0;
  std::uint32_t threshold_index = 0;
  double threshold_value = 0.0;
};

// Record ids are dense and unique within one party.
class SplitRecordTable {
 public:
  std::uint64_t add(const SplitRecord& record);
  // Throws UsageError for an unknown id.
  const SplitRecord& at(std::uint64_t record_id) const;
  std::size_t size() const { return records_.size(); }
  const std::vector<SplitRecord>& records() const { return records_; }

 private:
  std::vector<SplitRecord> records_;
};

// Samples with value <= threshold go left, in training and at inference.
inline bool goes_left(double value, const SplitRecord& record) {
  return value <= record.threshold_value;
}

// Internal nodes only know [party id, record id]; the split itself lives in the
// owner's SplitRecordTable.
struct TreeNode {
  bool leaf = true;
  PartyId party = 0;
  std::uint64_t record_id = 0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double weight = 0.0;  // already scaled by the learning rate
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int depth() const;
  std::size_t num_leaves() const;
};

struct BoostedModel {
  std::vector<RegressionTree> trees;
  double learning_rate = 0.3;
  double base_score = 0.0;
};

// Prediction with every party's records and columns at hand. Test-only path.
double predict_local(const BoostedModel& model, std::span<const SplitRecordTable> records,
                     const VerticalDataset& data, SampleId row);

// SHA-256 over the tree structure, leaf weight bits and every party's records.
std::string model_fingerprint(const BoostedModel& model,
                              std::span<const SplitRecordTable> records);

}  // namespace teeboost::core

#endif  // TEEBOOST_CORE_TREE_H_
