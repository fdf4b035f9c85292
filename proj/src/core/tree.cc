#include "teeboost/core/tree.h"

#include <openssl/evp.h>

#include <algorithm>
#include <functional>

#include "teeboost/common/bytes.h"
#include "teeboost/common/errors.h"

namespace teeboost::core {

std::uint64_t SplitRecordTable::add(const SplitRecord& record) {
  records_.push_back(record);
  return records_.size() - 1;
}

const SplitRecord& SplitRecordTable::at(std::uint64_t record_id) const {
  if (record_id >= records_.size()) {
    throw UsageError("unknown split record id " + std::to_string(record_id));
  }
  return records_[record_id];
}

int RegressionTree::depth() const {
  if (nodes.empty()) return 0;
  std::function<int(std::int32_t)> walk = [&](std::int32_t i) -> int {
    const auto& n = nodes[i];
    if (n.leaf) return 0;
    return 1 + std::max(walk(n.left), walk(n.right));
  };
  return walk(0);
}

std::size_t RegressionTree::num_leaves() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.leaf; }));
}

double predict_local(const BoostedModel& model, std::span<const SplitRecordTable> records,
                     const VerticalDataset& data, SampleId row) {
  double logit = model.base_score;
  for (const auto& tree : model.trees) {
    std::int32_t i = 0;
    while (!tree.nodes[i].leaf) {
      const auto& node = tree.nodes[i];
      const auto& rec = records[node.party].at(node.record_id);
      double x = data.party(node.party).at(row, rec.feature);
      i = goes_left(x, rec) ? node.left : node.right;
    }
    logit += tree.nodes[i].weight;
  }
  return logit;
}

std::string model_fingerprint(const BoostedModel& model,
                              std::span<const SplitRecordTable> records) {
  ByteWriter w;
  w.f64(model.learning_rate);
  w.f64(model.base_score);
  w.u32(static_cast<std::uint32_t>(model.trees.size()));
  for (const auto& tree : model.trees) {
    w.u32(static_cast<std::uint32_t>(tree.nodes.size()));
    for (const auto& n : tree.nodes) {
      w.u8(n.leaf ? 1 : 0);
      w.u32(n.party);
      w.u64(n.record_id);
      w.u32(static_cast<std::uint32_t>(n.left));
      w.u32(static_cast<std::uint32_t>(n.right));
      w.f64(n.weight);
    }
  }
  w.u32(static_cast<std::uint32_t>(records.size()));
  for (const auto& table : records) {
    w.u64(table.size());
    for (const auto& r : table.records()) {
      w.u32(r.feature);
      w.u32(r.threshold_index);
      w.f64(r.threshold_value);
    }
  }
  Bytes data = w.take();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  return to_hex(ByteView(digest, len));
}

}  // namespace teeboost::core
