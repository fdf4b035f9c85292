#include "teeboost/core/gradients.h"

#include <cmath>
#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::core {

double sigmoid(double logit) {
  if (logit >= 0) return 1.0 / (1.0 + std::exp(-logit));
  double e = std::exp(logit);
  return e / (1.0 + e);
}

std::vector<GradientPair> compute_gradients(std::span<const double> logits,
                                            std::span<const std::uint8_t> labels) {
  if (logits.size() != labels.size()) {
    throw UsageError("compute_gradients: " + std::to_string(logits.size()) + " logits vs " +
                     std::to_string(labels.size()) + " labels");
  }
  std::vector<GradientPair> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (labels[i] > 1) throw UsageError("compute_gradients: labels must be 0 or 1");
    double p = sigmoid(logits[i]);
    out[i].g = p - static_cast<double>(labels[i]);
    out[i].h = p * (1.0 - p);
  }
  return out;
}

std::vector<FixedGradient> encode_gradients(std::span<const GradientPair> gradients) {
  std::vector<FixedGradient> out(gradients.size());
  for (std::size_t i = 0; i < gradients.size(); ++i) {
    out[i].g = crypto::fixed_encode(gradients[i].g);
    out[i].h = crypto::fixed_encode(gradients[i].h);
  }
  return out;
}

}  // namespace teeboost::core
