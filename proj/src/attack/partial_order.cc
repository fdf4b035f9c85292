#include "teeboost/attack/partial_order.h"

#include <algorithm>
#include <optional>

#include "teeboost/common/errors.h"

namespace teeboost::attack {

std::size_t FeatureOrder::num_samples() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

FeatureOrder infer_feature_order(const core::BucketSums& sums,
                                 std::span<const SampleId> instances,
                                 std::span<const core::FixedGradient> gradients,
                                 const MatchOptions& options) {
  std::vector<Candidate> remaining;
  remaining.reserve(instances.size());
  for (SampleId i : instances) {
    if (i >= gradients.size()) throw UsageError("instance without a known gradient");
    remaining.push_back({i, gradients[i].g, gradients[i].h});
  }
  std::sort(remaining.begin(), remaining.end(),
            [](const Candidate& a, const Candidate& b) { return a.id < b.id; });

  FeatureOrder out;
  std::optional<std::size_t> leftover_at;
  for (std::size_t v = 0; v < sums.size(); ++v) {
    auto m = match_bucket(sums.g[v], sums.h[v], remaining, options);
    if (!m.matched) {
      ++out.unmatched_buckets;
      if (!leftover_at) leftover_at = out.groups.size();
      continue;
    }
    if (m.ids.empty()) continue;
    std::erase_if(remaining, [&](const Candidate& c) {
      return std::binary_search(m.ids.begin(), m.ids.end(), c.id);
    });
    out.groups.push_back(std::move(m.ids));
  }
  if (!remaining.empty()) {
    std::vector<SampleId> left;
    for (const auto& c : remaining) left.push_back(c.id);
    auto pos = leftover_at.value_or(out.groups.size());
    out.groups.insert(out.groups.begin() + static_cast<std::ptrdiff_t>(pos), std::move(left));
  }
  return out;
}

PartialOrder infer_partial_order(const proto::AdversaryView& view, const MatchOptions& options) {
  PartialOrder out;
  const proto::NodeView* root = view.first_root();
  if (root == nullptr) {
    out.nothing_to_attack = true;
    return out;
  }
  auto it = view.round_gradients.find(root->round);
  if (it == view.round_gradients.end()) {
    throw UsageError("adversary view lacks the gradients of round " + std::to_string(root->round));
  }
  for (const auto& [party, features] : root->parties) {
    for (std::size_t k = 0; k < features.size(); ++k) {
      FeatureOrder f = infer_feature_order(features[k], root->instances, it->second, options);
      f.party = party;
      f.feature = static_cast<std::uint32_t>(k);
      out.features.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace teeboost::attack
