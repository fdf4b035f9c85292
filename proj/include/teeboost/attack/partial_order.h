#ifndef TEEBOOST_ATTACK_PARTIAL_ORDER_H_
#define TEEBOOST_ATTACK_PARTIAL_ORDER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/attack/matching.h"
#include "teeboost/core/buckets.h"
#include "teeboost/core/gradients.h"
#include "teeboost/protocols/adversary_view.h"

namespace teeboost::attack {

using Groups = std::vector<std::vector<SampleId>>;

// Ordered groups of one feature: every sample of an earlier group has a
// value no larger than any sample of a later one.
struct FeatureOrder {
  core::PartyId party = 0;
  std::uint32_t feature = 0;
  Groups groups;
  std::size_t unmatched_buckets = 0;

  std::size_t num_samples() const;
};

struct PartialOrder {
  // Set when the view is empty: there is nothing to attack.
  bool nothing_to_attack = false;
  std::vector<FeatureOrder> features;
};

// Walks buckets in ascending order, matching each bucket's sums against the
// samples not yet placed. Samples left over because some bucket could not be
// matched form one group at the first unmatched bucket's position. Empty
// buckets produce no group.
FeatureOrder infer_feature_order(const core::BucketSums& sums,
                                 std::span<const SampleId> instances,
                                 std::span<const core::FixedGradient> gradients,
                                 const MatchOptions& options = {});

// Every passive feature of the view's first root node.
PartialOrder infer_partial_order(const proto::AdversaryView& view,
                                 const MatchOptions& options = {});

}  // namespace teeboost::attack

#endif  // TEEBOOST_ATTACK_PARTIAL_ORDER_H_
