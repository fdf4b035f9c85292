#ifndef TEEBOOST_BENCH_ACCOUNTING_H_
#define TEEBOOST_BENCH_ACCOUNTING_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "teeboost/federation/channel.h"
#include "teeboost/federation/topology.h"
#include "teeboost/protocols/strategy.h"

namespace teeboost::bench {

// Public shape of a federation: bucket count of every feature, per party.
struct FederationShape {
  std::vector<std::vector<std::uint32_t>> buckets;  // [party][feature]
  std::size_t paillier_bits = 2048;

  std::size_t num_parties() const { return buckets.size(); }
  // Fixed width of one ciphertext mod n^2.
  std::size_t ciphertext_bytes() const { return paillier_bits / 4; }
  // u32 length prefix plus n.
  std::size_t public_key_bytes() const { return 4 + paillier_bits / 8; }
};

// Closed-form traffic of a run, per phase, from the run's structural trace
// (node sizes, winners, |I_L|, routed rows). With m passive parties, K nodes
// and N instances at a level, B = 4 + 4K + 4N the node-list bytes, F_p and
// L_p the feature and bucket counts of party p, c the ciphertext width and
// s = 28 the sealing overhead:
//   secureboost  gradients  m (4 + B + 2Nc)
//                splits     sum_p 8 + K (4 + 4 F_p + 2 L_p c)
//   ntee         gradients  m (s + B + 16N)
//                splits     m (s + 4 + 9K)
//                decision   sum_p (s + 4 + 4 w_p)
//   onetee       gradients  m (B + 16N)
//                splits     sum_p s + 4 + K (4 + 4 F_p + 20 L_p) + 4 F_p N
// Every split won by a passive party adds 12 + 4 |I_L| (record id and I_L),
// plus 12 bytes of indices outside ntee. Routing c rows through a passive
// owner costs 12 + 4c + 4 + ceil(c / 8). Setup is m times the public key
// for secureboost and zero otherwise.
fed::PhaseBytes expected_bytes(fed::Mode mode, const FederationShape& shape,
                               const proto::RunTrace& trace);

std::uint64_t expected_training_bytes(fed::Mode mode, const FederationShape& shape,
                                      const proto::RunTrace& trace);

}  // namespace teeboost::bench

#endif  // TEEBOOST_BENCH_ACCOUNTING_H_
