#include "teeboost/bench/accounting.h"

#include "teeboost/crypto/seal.h"

namespace teeboost::bench {

fed::PhaseBytes expected_bytes(fed::Mode mode, const FederationShape& shape,
                               const proto::RunTrace& trace) {
  using fed::Mode;
  using fed::Phase;
  fed::PhaseBytes out{};
  auto add = [&](Phase p, std::uint64_t n) { out[static_cast<std::size_t>(p)] += n; };
  if (mode == Mode::kPlaintext) return out;

  const std::uint64_t m = shape.num_parties() - 1;
  const std::uint64_t c = shape.ciphertext_bytes();
  const std::uint64_t s = crypto::kSealOverhead;
  std::vector<std::uint64_t> features(shape.num_parties()), buckets(shape.num_parties());
  for (std::size_t p = 0; p < shape.num_parties(); ++p) {
    features[p] = shape.buckets[p].size();
    for (auto l : shape.buckets[p]) buckets[p] += l;
  }

  if (mode == Mode::kSecureBoost) add(Phase::kSetup, m * shape.public_key_bytes());

  for (const auto& level : trace.levels) {
    const std::uint64_t k = level.node_sizes.size();
    std::uint64_t n = 0;
    for (auto size : level.node_sizes) n += size;
    const std::uint64_t batch = 4 + 4 * k + 4 * n;
    std::vector<std::uint64_t> won(shape.num_parties(), 0);
    for (const auto& o : level.outcomes) {
      if (!o.split || o.party == core::kActiveParty) continue;
      ++won[o.party];
      add(Phase::kDecision, 12 + 4ull * o.left_size + (mode == Mode::kNTee ? 0 : 12));
    }
    for (std::size_t p = 1; p < shape.num_parties(); ++p) {
      switch (mode) {
        case Mode::kSecureBoost:
          add(Phase::kGradients, 4 + batch + 2 * n * c);
          add(Phase::kSplits, 8 + k * (4 + 4 * features[p] + 2 * buckets[p] * c));
          break;
        case Mode::kNTee:
          add(Phase::kGradients, s + batch + 16 * n);
          add(Phase::kSplits, s + 4 + 9 * k);
          add(Phase::kDecision, s + 4 + 4 * won[p]);
          break;
        case Mode::kOneTee:
          add(Phase::kGradients, batch + 16 * n);
          add(Phase::kSplits, s + 4 + k * (4 + 4 * features[p] + 20 * buckets[p]) +
                                  4 * features[p] * n);
          break;
        case Mode::kPlaintext:
          break;
      }
    }
  }
  for (const auto& r : trace.routes) {
    add(Phase::kInference, 12 + 4ull * r.rows + 4 + (r.rows + 7) / 8);
  }
  return out;
}

std::uint64_t expected_training_bytes(fed::Mode mode, const FederationShape& shape,
                                      const proto::RunTrace& trace) {
  auto b = expected_bytes(mode, shape, trace);
  std::uint64_t total = 0;
  for (std::size_t p = 0; p < b.size(); ++p) {
    if (p != static_cast<std::size_t>(fed::Phase::kSetup)) total += b[p];
  }
  return total;
}

}  // namespace teeboost::bench
