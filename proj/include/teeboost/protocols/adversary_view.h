#ifndef TEEBOOST_PROTOCOLS_ADVERSARY_VIEW_H_
#define TEEBOOST_PROTOCOLS_ADVERSARY_VIEW_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "teeboost/core/buckets.h"
#include "teeboost/core/dataset.h"
#include "teeboost/core/gradients.h"

namespace teeboost::proto {

// Everything the active party decrypts for one node: per passive party and
// feature, the (G, H) sum of every bucket.
struct NodeView {
  std::uint32_t round = 0;
  std::uint32_t level = 0;
  std::uint32_t position = 0;  // index within the level batch
  std::vector<core::SampleId> instances;
  std::map<core::PartyId, std::vector<core::BucketSums>> parties;
};

// Decrypted sums plus the active party's own gradients, per round. Only
// SecureBoost fills it.
struct AdversaryView {
  std::vector<NodeView> nodes;
  std::map<std::uint32_t, std::vector<core::FixedGradient>> round_gradients;

  bool empty() const { return nodes.empty(); }
  // First root node recorded, or nullptr.
  const NodeView* first_root() const;
};

nlohmann::json to_json(const AdversaryView& view);
AdversaryView adversary_view_from_json(const nlohmann::json& j);

}  // namespace teeboost::proto

#endif  // TEEBOOST_PROTOCOLS_ADVERSARY_VIEW_H_
