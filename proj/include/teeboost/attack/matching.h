#ifndef TEEBOOST_ATTACK_MATCHING_H_
#define TEEBOOST_ATTACK_MATCHING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/core/dataset.h"
#include "teeboost/crypto/fixed_point.h"

namespace teeboost::attack {

using core::SampleId;
using crypto::RingElem;

// A sample whose gradients the attacker knows.
struct Candidate {
  SampleId id = 0;
  RingElem g = 0;
  RingElem h = 0;
};

struct MatchOptions {
  std::uint64_t node_budget = 1'000'000;
  // Allowed |difference| per coordinate, in fixed-point units. Decrypted
  // sums are exact, so 0 is the normal setting.
  std::uint64_t tolerance = 0;
};

struct MatchResult {
  bool matched = false;
  std::vector<SampleId> ids;  // ascending
  std::uint64_t nodes_visited = 0;
};

// Finds a subset of `available` (ascending ids) whose (sum g, sum h) equals
// the target. The empty set, single samples and the whole remaining set are
// checked first; then subsets of size 2, 3, ... by depth-first search over
// ascending ids. The first hit in that order is returned. Gives up,
// unmatched, after node_budget search nodes.
MatchResult match_bucket(RingElem target_g, RingElem target_h,
                         std::span<const Candidate> available, const MatchOptions& options = {});

}  // namespace teeboost::attack

#endif  // TEEBOOST_ATTACK_MATCHING_H_
