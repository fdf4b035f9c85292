#ifndef TEEBOOST_COMMON_RNG_H_
#define TEEBOOST_COMMON_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace teeboost {

// Seeded generator used for data generation and subsampling. The helpers below
// avoid std distributions so results do not depend on the standard library.
using Rng = std::mt19937_64;

// Mixes a base seed with a stream index (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform integer in [0, bound) without modulo bias. bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

double standard_normal(Rng& rng);

// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace teeboost

#endif  // TEEBOOST_COMMON_RNG_H_
