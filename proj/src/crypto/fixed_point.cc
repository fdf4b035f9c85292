#include "teeboost/crypto/fixed_point.h"

#include <cmath>
#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::crypto {

RingElem fixed_encode(double x) {
  if (!std::isfinite(x) || std::fabs(x) > kMaxEncodable) {
    throw RangeError("value " + std::to_string(x) + " outside fixed-point range +-2^40");
  }
  auto scaled = static_cast<std::int64_t>(std::llround(x * kScale));
  return static_cast<RingElem>(scaled);
}

double fixed_decode(RingElem r) {
  return static_cast<double>(static_cast<std::int64_t>(r)) / kScale;
}

}  // namespace teeboost::crypto
