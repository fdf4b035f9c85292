#include "teeboost/attack/matching.h"

#include <algorithm>

namespace teeboost::attack {

namespace {

bool close(RingElem a, RingElem b, std::uint64_t tol) {
  RingElem d = a - b;
  return d <= tol || (0 - d) <= tol;
}

auto as_signed(RingElem r) { return static_cast<std::int64_t>(r); }

class Search {
 public:
  Search(RingElem tg, RingElem th, std::span<const Candidate> items, const MatchOptions& opt)
      : tg_(tg), th_(th), items_(items), opt_(opt) {
    prune_h_ = std::all_of(items.begin(), items.end(),
                           [](const Candidate& c) { return as_signed(c.h) >= 0; });
    // suffix_h_[i] = sum of h over items[i..], for the "rest cannot reach" cut.
    suffix_h_.assign(items.size() + 1, 0);
    for (std::size_t i = items.size(); i-- > 0;) {
      suffix_h_[i] = suffix_h_[i + 1] + as_signed(items[i].h);
    }
  }

  // Every subset of exactly k items, in lexicographic order of ids.
  bool run(std::size_t k) {
    chosen_.clear();
    return dfs(0, k, 0, 0);
  }

  const std::vector<SampleId>& chosen() const { return chosen_; }
  std::uint64_t visited() const { return visited_; }
  bool exhausted() const { return visited_ >= opt_.node_budget; }

 private:
  bool dfs(std::size_t start, std::size_t left, RingElem g, RingElem h) {
    if (exhausted()) return false;
    ++visited_;
    if (left == 0) return close(g, tg_, opt_.tolerance) && close(h, th_, opt_.tolerance);
    if (prune_h_) {
      const std::int64_t have = as_signed(h);
      const std::int64_t want = as_signed(th_) + static_cast<std::int64_t>(opt_.tolerance);
      if (have > want) return false;
      if (have + suffix_h_[start] + static_cast<std::int64_t>(opt_.tolerance) < as_signed(th_)) {
        return false;
      }
    }
    for (std::size_t i = start; i + left <= items_.size(); ++i) {
      chosen_.push_back(items_[i].id);
      if (dfs(i + 1, left - 1, g + items_[i].g, h + items_[i].h)) return true;
      chosen_.pop_back();
      if (exhausted()) return false;
    }
    return false;
  }

  RingElem tg_, th_;
  std::span<const Candidate> items_;
  const MatchOptions& opt_;
  bool prune_h_ = false;
  std::vector<std::int64_t> suffix_h_;
  std::vector<SampleId> chosen_;
  std::uint64_t visited_ = 0;
};

}  // namespace

MatchResult match_bucket(RingElem target_g, RingElem target_h,
                         std::span<const Candidate> available, const MatchOptions& options) {
  MatchResult out;
  if (close(target_g, 0, options.tolerance) && close(target_h, 0, options.tolerance)) {
    out.matched = true;
    return out;
  }
  for (const auto& c : available) {
    ++out.nodes_visited;
    if (close(c.g, target_g, options.tolerance) && close(c.h, target_h, options.tolerance)) {
      out.matched = true;
      out.ids = {c.id};
      return out;
    }
  }
  RingElem all_g = 0, all_h = 0;
  for (const auto& c : available) {
    all_g += c.g;
    all_h += c.h;
  }
  if (close(all_g, target_g, options.tolerance) && close(all_h, target_h, options.tolerance)) {
    out.matched = true;
    for (const auto& c : available) out.ids.push_back(c.id);
    return out;
  }
  Search search(target_g, target_h, available, options);
  for (std::size_t k = 2; k < available.size(); ++k) {
    if (search.run(k)) {
      out.matched = true;
      out.ids = search.chosen();
      break;
    }
    if (search.exhausted()) break;
  }
  out.nodes_visited += search.visited();
  return out;
}

}  // namespace teeboost::attack
