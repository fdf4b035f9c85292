#ifndef TEEBOOST_ATTACK_GUESSING_H_
#define TEEBOOST_ATTACK_GUESSING_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "teeboost/attack/partial_order.h"

namespace teeboost::attack {

// The attacker knows only the value range.
struct MinMaxPrior {
  double lo = 0.0;
  double hi = 0.0;
};

// Equal-width histogram over [lo, hi]; probabilities sum to 1.
struct HistogramPrior {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> probs;

  // `bins` equal-width bins over the sample's observed range.
  static HistogramPrior from_sample(std::span<const double> values, std::size_t bins = 10);

  double bin_width() const { return (hi - lo) / static_cast<double>(probs.size()); }
  // Inverse CDF, linear within each bin. q in [0, 1].
  double quantile(double q) const;
  double median() const { return quantile(0.5); }
};

using Prior = std::variant<MinMaxPrior, HistogramPrior>;

// UsageError unless lo <= hi and (histogram) probabilities are non-negative
// and sum to 1.
void validate(const Prior& prior);

struct Guess {
  SampleId id = 0;
  double value = 0.0;
};

// Ranks the samples by group (ties share the group's mean rank) and maps
// rank / (n - 1) through the prior. A single sample gets lo (MinMax) or the
// histogram median.
std::vector<Guess> assign_values(const Groups& groups, const Prior& prior);

// n independent draws from the prior.
std::vector<double> random_baseline(std::size_t n, const Prior& prior, std::uint64_t seed);

// Fraction of |guess - truth| <= tol, per tolerance.
std::vector<double> guess_accuracy(std::span<const double> guesses, std::span<const double> truth,
                                   std::span<const double> tolerances);

// The four methods compared in the evaluation, in reporting order.
enum class Method { kRandomMinMax, kAttackMinMax, kRandomDistribution, kAttackDistribution };
inline constexpr Method kAllMethods[] = {Method::kRandomMinMax, Method::kAttackMinMax,
                                         Method::kRandomDistribution, Method::kAttackDistribution};
std::string_view method_name(Method m);

}  // namespace teeboost::attack

#endif  // TEEBOOST_ATTACK_GUESSING_H_
