#include "teeboost/bench/synth.h"

#include <cmath>

#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"
#include "teeboost/core/gradients.h"

namespace teeboost::bench {

namespace {

double draw(const FeatureSpec& f, Rng& rng) {
  switch (f.dist) {
    case Distribution::kUniform:
      return f.lo + uniform01(rng) * (f.hi - f.lo);
    case Distribution::kTruncatedNormal:
      for (int tries = 0; tries < 10000; ++tries) {
        double x = f.mean + f.sd * standard_normal(rng);
        if (x >= f.lo && x <= f.hi) return x;
      }
      throw UsageError("feature " + f.name + ": truncation window is too narrow");
    case Distribution::kLogNormal:
      return std::exp(f.mean + f.sd * standard_normal(rng));
  }
  return 0.0;
}

double standardize(const FeatureSpec& f, double x) {
  switch (f.dist) {
    case Distribution::kUniform:
      return (x - (f.lo + f.hi) / 2.0) / ((f.hi - f.lo) / std::sqrt(12.0));
    case Distribution::kTruncatedNormal:
      return (x - f.mean) / f.sd;
    case Distribution::kLogNormal:
      return (std::log(x) - f.mean) / f.sd;
  }
  return 0.0;
}

}  // namespace

Distribution parse_distribution(const std::string& name) {
  if (name == "uniform") return Distribution::kUniform;
  if (name == "truncated_normal" || name == "normal") return Distribution::kTruncatedNormal;
  if (name == "lognormal" || name == "salary") return Distribution::kLogNormal;
  throw UsageError("unknown distribution '" + name + "'");
}

SyntheticData gen_synthetic(std::size_t n, const SyntheticSpec& spec, std::uint64_t seed) {
  if (spec.num_parties == 0) throw UsageError("synthetic spec needs at least one party");
  SyntheticData out;
  out.layout.label_column = "label";
  out.layout.parties.assign(spec.num_parties, {});
  std::vector<core::FeatureMatrix> parties(spec.num_parties);
  std::vector<std::vector<double>> columns;
  for (std::size_t k = 0; k < spec.features.size(); ++k) {
    const auto& f = spec.features[k];
    if (f.party >= spec.num_parties) {
      throw UsageError("feature " + f.name + " assigned to missing party " +
                       std::to_string(f.party));
    }
    if (f.dist != Distribution::kLogNormal && !(f.lo <= f.hi)) {
      throw UsageError("feature " + f.name + ": lo must not exceed hi");
    }
    // One stream per feature so adding a feature leaves the others unchanged.
    Rng rng(derive_seed(seed, k));
    std::vector<double> col(n);
    for (auto& x : col) x = draw(f, rng);
    columns.push_back(std::move(col));
  }
  out.logits.assign(n, spec.intercept);
  for (std::size_t k = 0; k < spec.features.size(); ++k) {
    const auto& f = spec.features[k];
    if (f.weight == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out.logits[i] += f.weight * standardize(f, columns[k][i]);
  }
  Rng label_rng(derive_seed(seed, 1u << 20));
  std::vector<std::uint8_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = uniform01(label_rng) < core::sigmoid(out.logits[i]) ? 1 : 0;
  }
  for (std::size_t k = 0; k < spec.features.size(); ++k) {
    const auto& f = spec.features[k];
    parties[f.party].names.push_back(f.name);
    parties[f.party].columns.push_back(std::move(columns[k]));
    out.layout.parties[f.party].push_back(f.name);
  }
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  out.data = core::VerticalDataset(std::move(ids), std::move(parties), std::move(labels));
  return out;
}

SyntheticSpec default_spec(std::size_t d, std::size_t active, std::size_t num_parties) {
  if (num_parties < 1 || active > d) throw UsageError("invalid synthetic layout");
  if (num_parties == 1 && active != d) throw UsageError("a single party must hold every feature");
  SyntheticSpec spec;
  spec.num_parties = num_parties;
  spec.intercept = -0.5;
  const double weights[] = {2.0, -1.5, 1.0, 0.0, 0.5, 1.5, -1.0, 0.0, 0.75, -0.5};
  std::size_t passive_index = 0;
  for (std::size_t k = 0; k < d; ++k) {
    FeatureSpec f;
    f.name = "x" + std::to_string(k);
    f.weight = weights[k % 10];
    if (k < active) {
      f.party = 0;
    } else {
      f.party = static_cast<core::PartyId>(1 + passive_index % (num_parties - 1));
      if (passive_index == 0) {
        f.name = "age";
        f.lo = 21.0;
        f.hi = 109.0;
      } else if (passive_index == 1) {
        f.name = "salary";
        f.dist = Distribution::kLogNormal;
        f.mean = 8.5;
        f.sd = 0.6;
      }
      ++passive_index;
    }
    if (f.dist == Distribution::kUniform && f.name != "age") {
      if (k % 3 == 1) {
        f.dist = Distribution::kTruncatedNormal;
        f.mean = 0.0;
        f.sd = 1.0;
        f.lo = -3.0;
        f.hi = 3.0;
      } else {
        f.lo = 0.0;
        f.hi = 1.0;
      }
    }
    spec.features.push_back(f);
  }
  return spec;
}

SyntheticSpec age_spec() {
  SyntheticSpec spec;
  spec.num_parties = 2;
  FeatureSpec score{"score", 0, Distribution::kTruncatedNormal, 0.0, 1.0, -4.0, 4.0, 1.5};
  FeatureSpec age{"age", 1, Distribution::kUniform, 0.0, 1.0, 21.0, 109.0, -1.0};
  spec.features = {score, age};
  return spec;
}

}  // namespace teeboost::bench
