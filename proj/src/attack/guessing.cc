#include "teeboost/attack/guessing.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"

namespace teeboost::attack {

HistogramPrior HistogramPrior::from_sample(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw UsageError("histogram prior needs at least one value");
  if (bins == 0) throw UsageError("histogram prior needs at least one bin");
  auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  HistogramPrior p;
  p.lo = *mn;
  p.hi = *mx;
  if (p.lo == p.hi) {
    p.probs = {1.0};
    return p;
  }
  std::vector<std::size_t> counts(bins, 0);
  const double width = (p.hi - p.lo) / static_cast<double>(bins);
  for (double x : values) {
    auto b = static_cast<std::size_t>((x - p.lo) / width);
    ++counts[std::min(b, bins - 1)];
  }
  p.probs.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    p.probs[b] = static_cast<double>(counts[b]) / static_cast<double>(values.size());
  }
  return p;
}

double HistogramPrior::quantile(double q) const {
  if (probs.empty()) throw UsageError("empty histogram prior");
  if (lo == hi) return lo;
  q = std::clamp(q, 0.0, 1.0);
  const double w = bin_width();
  double cum = 0.0;
  for (std::size_t b = 0; b < probs.size(); ++b) {
    const double next = cum + probs[b];
    if (probs[b] > 0.0 && (q <= next || b + 1 == probs.size())) {
      const double frac = std::clamp((q - cum) / probs[b], 0.0, 1.0);
      return lo + (static_cast<double>(b) + frac) * w;
    }
    cum = next;
  }
  return hi;
}

void validate(const Prior& prior) {
  if (const auto* m = std::get_if<MinMaxPrior>(&prior)) {
    if (!(m->lo <= m->hi)) throw UsageError("prior needs lo <= hi");
    return;
  }
  const auto& h = std::get<HistogramPrior>(prior);
  if (!(h.lo <= h.hi)) throw UsageError("prior needs lo <= hi");
  if (h.probs.empty()) throw UsageError("histogram prior has no bins");
  double sum = 0.0;
  for (double p : h.probs) {
    if (!(p >= 0.0)) throw UsageError("histogram probabilities must be non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw UsageError("histogram probabilities must sum to 1");
}

std::vector<Guess> assign_values(const Groups& groups, const Prior& prior) {
  validate(prior);
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  std::vector<Guess> out;
  out.reserve(n);
  auto at_rank = [&](double q) {
    if (const auto* m = std::get_if<MinMaxPrior>(&prior)) return m->lo + q * (m->hi - m->lo);
    return std::get<HistogramPrior>(prior).quantile(q);
  };
  if (n == 1) {
    double v = std::holds_alternative<MinMaxPrior>(prior)
                   ? std::get<MinMaxPrior>(prior).lo
                   : std::get<HistogramPrior>(prior).median();
    for (const auto& g : groups) {
      for (SampleId i : g) out.push_back({i, v});
    }
    return out;
  }
  std::size_t start = 0;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    const double mean_rank = static_cast<double>(start) + static_cast<double>(g.size() - 1) / 2.0;
    const double v = at_rank(mean_rank / static_cast<double>(n - 1));
    for (SampleId i : g) out.push_back({i, v});
    start += g.size();
  }
  return out;
}

std::vector<double> random_baseline(std::size_t n, const Prior& prior, std::uint64_t seed) {
  validate(prior);
  Rng rng(seed);
  std::vector<double> out(n);
  if (const auto* m = std::get_if<MinMaxPrior>(&prior)) {
    for (auto& x : out) x = m->lo + uniform01(rng) * (m->hi - m->lo);
    return out;
  }
  const auto& h = std::get<HistogramPrior>(prior);
  std::vector<double> cdf(h.probs.size());
  std::partial_sum(h.probs.begin(), h.probs.end(), cdf.begin());
  const double w = h.lo == h.hi ? 0.0 : h.bin_width();
  for (auto& x : out) {
    const double u = uniform01(rng) * cdf.back();
    auto b = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    b = std::min(b, cdf.size() - 1);
    x = h.lo + (static_cast<double>(b) + uniform01(rng)) * w;
  }
  return out;
}

std::vector<double> guess_accuracy(std::span<const double> guesses, std::span<const double> truth,
                                   std::span<const double> tolerances) {
  if (guesses.size() != truth.size()) throw UsageError("guesses and truth differ in length");
  std::vector<double> out;
  for (double tol : tolerances) {
    std::size_t hit = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (std::abs(guesses[i] - truth[i]) <= tol) ++hit;
    }
    out.push_back(truth.empty() ? 0.0
                                : static_cast<double>(hit) / static_cast<double>(truth.size()));
  }
  return out;
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kRandomMinMax: return "random_minmax";
    case Method::kAttackMinMax: return "attack_minmax";
    case Method::kRandomDistribution: return "random_distribution";
    case Method::kAttackDistribution: return "attack_distribution";
  }
  return "unknown";
}

}  // namespace teeboost::attack
