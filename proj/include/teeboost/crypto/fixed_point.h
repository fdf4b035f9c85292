#ifndef TEEBOOST_CRYPTO_FIXED_POINT_H_
#define TEEBOOST_CRYPTO_FIXED_POINT_H_

#include <cstdint>

namespace teeboost::crypto {

// Element of Z_{2^64}. Real values are embedded as round(x * 2^20) in two's
// complement, so ring addition is exact fixed-point addition.
using RingElem = std::uint64_t;

inline constexpr int kFractionBits = 20;
inline constexpr double kScale = 1048576.0;  // 2^20
inline constexpr double kMaxEncodable = 1099511627776.0;  // 2^40

// Throws RangeError for non-finite x or |x| > 2^40.
RingElem fixed_encode(double x);
double fixed_decode(RingElem r);

inline RingElem ring_add(RingElem a, RingElem b) { return a + b; }
inline RingElem ring_sub(RingElem a, RingElem b) { return a - b; }

}  // namespace teeboost::crypto

#endif  // TEEBOOST_CRYPTO_FIXED_POINT_H_
