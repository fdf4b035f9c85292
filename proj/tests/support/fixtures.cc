#include "fixtures.h"

#include "teeboost/bench/synth.h"
#include "teeboost/common/rng.h"

namespace teeboost::testing {

core::VerticalDataset make_dataset(const std::vector<std::vector<std::vector<double>>>& party_columns,
                                   std::vector<std::uint8_t> labels) {
  std::vector<core::FeatureMatrix> parties;
  for (std::size_t p = 0; p < party_columns.size(); ++p) {
    core::FeatureMatrix m;
    for (std::size_t k = 0; k < party_columns[p].size(); ++k) {
      m.names.push_back("p" + std::to_string(p) + "_" + std::to_string(k));
      m.columns.push_back(party_columns[p][k]);
    }
    parties.push_back(std::move(m));
  }
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < labels.size(); ++i) ids.push_back("s" + std::to_string(i));
  return core::VerticalDataset(std::move(ids), std::move(parties), std::move(labels));
}

ThreeSamples three_samples() {
  return {make_dataset({{{1.0, 1.0, 1.0}}, {{20.0, 30.0, 15.0}}}, {1, 0, 0}),
          {{-1.0, 0.25}, {0.6, 0.24}, {0.2, 0.16}}};
}

std::vector<core::FixedGradient> fixed(const std::vector<core::GradientPair>& g) {
  return core::encode_gradients(g);
}

std::vector<core::GradientPair> random_gradients(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<core::GradientPair> out(n);
  for (auto& gp : out) {
    double p = 0.02 + 0.96 * uniform01(rng);
    bool y = uniform01(rng) < 0.5;
    gp = {p - (y ? 1.0 : 0.0), p * (1.0 - p)};
  }
  return out;
}

core::VerticalDataset synthetic(std::size_t n, std::uint64_t seed, std::size_t features,
                                std::size_t active, std::size_t parties) {
  return bench::gen_synthetic(n, bench::default_spec(features, active, parties), seed).data;
}

proto::SessionOptions options_for(fed::Mode mode, std::uint64_t seed, std::size_t paillier_bits) {
  proto::SessionOptions o;
  o.mode = mode;
  o.params.seed = seed;
  o.paillier_bits = paillier_bits;
  o.crypto_seed = seed;
  return o;
}

}  // namespace teeboost::testing
