#ifndef TEEBOOST_TESTS_FIXTURES_H_
#define TEEBOOST_TESTS_FIXTURES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teeboost/core/dataset.h"
#include "teeboost/core/gradients.h"
#include "teeboost/federation/topology.h"
#include "teeboost/protocols/session.h"

namespace teeboost::testing {

// One column per entry of `party_columns`, named p<party>_<k>.
core::VerticalDataset make_dataset(const std::vector<std::vector<std::vector<double>>>& party_columns,
                                   std::vector<std::uint8_t> labels);

// Worked example: three samples, one active feature, one passive feature with
// values {20, 30, 15} and gradients g = {-1, 0.6, 0.2}.
struct ThreeSamples {
  core::VerticalDataset data;
  std::vector<core::GradientPair> gradients;
};
ThreeSamples three_samples();

std::vector<core::FixedGradient> fixed(const std::vector<core::GradientPair>& g);

// Distinct, continuous gradient pairs in the logistic range.
std::vector<core::GradientPair> random_gradients(std::size_t n, std::uint64_t seed);

core::VerticalDataset synthetic(std::size_t n, std::uint64_t seed, std::size_t features = 10,
                                std::size_t active = 5, std::size_t parties = 2);

proto::SessionOptions options_for(fed::Mode mode, std::uint64_t seed,
                                  std::size_t paillier_bits = 512);

}  // namespace teeboost::testing

#endif  // TEEBOOST_TESTS_FIXTURES_H_
