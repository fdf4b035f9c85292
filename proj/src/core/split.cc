#include "teeboost/core/split.h"

#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::core {

using crypto::fixed_decode;

double split_score(double g_l, double h_l, double g, double h, double lambda) {
  const double g_r = g - g_l;
  const double h_r = h - h_l;
  const double d_l = h_l + lambda;
  const double d_r = h_r + lambda;
  const double d = h + lambda;
  if (!(d_l > 0.0) || !(d_r > 0.0) || !(d > 0.0)) {
    throw ArithmeticError("split_score: non-positive denominator (lambda=" +
                          std::to_string(lambda) + ")");
  }
  return g_l * g_l / d_l + g_r * g_r / d_r + g * g / d;
}

double leaf_weight(double g, double h, double lambda, double eta) {
  const double d = h + lambda;
  if (!(d > 0.0)) throw ArithmeticError("leaf_weight: h + lambda must be positive");
  return -eta * g / d;
}

LocalBest scan_party(std::span<const BucketSums> features, GradientTotals totals, double lambda) {
  LocalBest best;
  const double g = fixed_decode(totals.g);
  const double h = fixed_decode(totals.h);
  for (std::size_t k = 0; k < features.size(); ++k) {
    const auto& f = features[k];
    if (f.size() < 2) continue;
    crypto::RingElem cum_g = 0;
    crypto::RingElem cum_h = 0;
    for (std::size_t v = 0; v < f.size(); ++v) {
      cum_g += f.g[v];
      cum_h += f.h[v];
      const double g_l = fixed_decode(cum_g);
      const double h_l = fixed_decode(cum_h);
      const double h_r = fixed_decode(totals.h - cum_h);
      if (!(h_l + lambda > 0.0) || !(h_r + lambda > 0.0) || !(h + lambda > 0.0)) continue;
      const double score = split_score(g_l, h_l, g, h, lambda);
      if (score > best.score) {
        best.found = true;
        best.score = score;
        best.feature = static_cast<std::uint32_t>(k);
        best.threshold = static_cast<std::uint32_t>(v);
      }
    }
  }
  return best;
}

void GlobalBest::offer(PartyId p, const LocalBest& candidate) {
  if (!candidate.found) return;
  if (!found || candidate.score > local.score) {
    found = true;
    party = p;
    local = candidate;
  }
}

std::pair<std::vector<SampleId>, std::vector<SampleId>> partition_by_bucket(
    std::span<const std::uint32_t> bins, std::uint32_t threshold,
    std::span<const SampleId> instances) {
  std::pair<std::vector<SampleId>, std::vector<SampleId>> out;
  for (SampleId i : instances) {
    (bins[i] <= threshold ? out.first : out.second).push_back(i);
  }
  return out;
}

std::optional<SplitDecision> find_best_split_oracle(std::span<const SampleId> instances,
                                                    std::span<const FeatureBinning> parties,
                                                    std::span<const FixedGradient> gradients,
                                                    double lambda) {
  if (instances.size() < 2) return std::nullopt;
  const GradientTotals totals = node_totals(gradients, instances);
  GlobalBest best;
  for (std::size_t p = 0; p < parties.size(); ++p) {
    const auto& party = parties[p];
    std::vector<BucketSums> sums;
    sums.reserve(party.num_features());
    for (std::size_t k = 0; k < party.num_features(); ++k) {
      sums.push_back(bucket_sums(gradients, party.bins[k], party.thresholds[k].num_buckets(),
                                 instances));
    }
    best.offer(static_cast<PartyId>(p), scan_party(sums, totals, lambda));
  }
  if (!best.found) return std::nullopt;
  SplitDecision d;
  d.party = best.party;
  d.feature = best.local.feature;
  d.threshold = best.local.threshold;
  d.score = best.local.score;
  d.left = partition_by_bucket(parties[best.party].bins[d.feature], d.threshold, instances).first;
  return d;
}

}  // namespace teeboost::core
