#ifndef TEEBOOST_BENCH_SYNTH_H_
#define TEEBOOST_BENCH_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "teeboost/bench/csv.h"
#include "teeboost/core/dataset.h"

namespace teeboost::bench {

enum class Distribution {
  kUniform,          // U(lo, hi)
  kTruncatedNormal,  // N(mean, sd) restricted to [lo, hi] by rejection
  kLogNormal,        // exp(N(mean, sd)), salary-like
};

struct FeatureSpec {
  std::string name;
  core::PartyId party = 0;
  Distribution dist = Distribution::kUniform;
  double mean = 0.0;
  double sd = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  // Coefficient of the standardized value in the label logit.
  double weight = 0.0;
};

// Features plus a logistic label rule: y ~ Bernoulli(sigmoid(intercept +
// sum_k weight_k * z_k)), z_k the feature standardized by its distribution's
// own location and scale.
struct SyntheticSpec {
  std::vector<FeatureSpec> features;
  double intercept = 0.0;
  std::size_t num_parties = 2;
};

struct SyntheticData {
  core::VerticalDataset data;
  ColumnLayout layout;
  std::vector<double> logits;  // the label rule's logit per row
};

SyntheticData gen_synthetic(std::size_t n, const SyntheticSpec& spec, std::uint64_t seed);

// d features, the first `active` at party 0, the rest spread round-robin over
// parties 1..num_parties-1. Includes an age-like U(21, 109) column and a
// salary-like log-normal column at the first passive party.
SyntheticSpec default_spec(std::size_t d = 10, std::size_t active = 5, std::size_t num_parties = 2);

// One active feature and the age-like column alone at party 1.
SyntheticSpec age_spec();

Distribution parse_distribution(const std::string& name);

}  // namespace teeboost::bench

#endif  // TEEBOOST_BENCH_SYNTH_H_
