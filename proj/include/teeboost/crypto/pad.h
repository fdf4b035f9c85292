#ifndef TEEBOOST_CRYPTO_PAD_H_
#define TEEBOOST_CRYPTO_PAD_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/crypto/fixed_point.h"

namespace teeboost::crypto {

using PadSeed = std::array<std::uint8_t, 16>;

PadSeed generate_pad_seed();
// Deterministic seed for tests and reproducible runs.
PadSeed pad_seed_from(std::uint64_t value);

// One (g, h) pad pair per sample, uniform over the full ring.
struct PadVector {
  std::vector<RingElem> g;
  std::vector<RingElem> h;

  std::size_t size() const { return g.size(); }
};

// AES-128-CTR keystream under `seed`, with the round number as the counter
// block prefix. The same (seed, round) always yields the same pads.
PadVector gen_pads(const PadSeed& seed, std::uint64_t round, std::size_t n);

inline RingElem mask(RingElem value, RingElem pad) { return value + pad; }

// masked_sum - sum of pads[i] over `indices`. ProtocolError if an index is
// outside the pad vector.
RingElem unmask_sum(RingElem masked_sum, std::span<const std::uint32_t> indices,
                    std::span<const RingElem> pads);

}  // namespace teeboost::crypto

#endif  // TEEBOOST_CRYPTO_PAD_H_
