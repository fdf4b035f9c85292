#ifndef TEEBOOST_CORE_GRADIENTS_H_
#define TEEBOOST_CORE_GRADIENTS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/crypto/fixed_point.h"

namespace teeboost::core {

struct GradientPair {
  double g = 0.0;
  double h = 0.0;
};

// Fixed-point image of a GradientPair; the form every protocol sums in.
struct FixedGradient {
  crypto::RingElem g = 0;
  crypto::RingElem h = 0;
};

double sigmoid(double logit);

// Binary logistic loss: g = sigmoid(z) - y, h = sigmoid(z) (1 - sigmoid(z)).
std::vector<GradientPair> compute_gradients(std::span<const double> logits,
                                            std::span<const std::uint8_t> labels);

std::vector<FixedGradient> encode_gradients(std::span<const GradientPair> gradients);

}  // namespace teeboost::core

#endif  // TEEBOOST_CORE_GRADIENTS_H_
