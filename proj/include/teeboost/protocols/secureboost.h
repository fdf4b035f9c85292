#ifndef TEEBOOST_PROTOCOLS_SECUREBOOST_H_
#define TEEBOOST_PROTOCOLS_SECUREBOOST_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "teeboost/crypto/paillier.h"
#include "teeboost/protocols/strategy.h"

namespace teeboost::proto {

// Paillier-based split finding. The active party encrypts every gradient
// once per tree and sends the ciphertexts for the level's nodes to each
// passive party; passive parties add them per bucket; the active party
// decrypts all bucket sums (recorded in the adversary view), scans, and
// notifies the winner by feature and threshold index.
class SecureBoostStrategy final : public ProtocolStrategy {
 public:
  // `seed` makes every passive party's encryption randomness reproducible.
  SecureBoostStrategy(ProtocolContext& ctx, crypto::PaillierRandom& active_rng,
                      std::optional<std::uint64_t> seed);

 protected:
  void on_begin_tree() override;
  std::vector<std::optional<core::SplitDecision>> run_level(
      std::uint32_t level, std::span<const core::LevelTask> tasks) override;

 private:
  Bytes encrypted_gradients(std::span<const core::LevelTask> tasks) const;
  // Passive side: parse, aggregate per bucket, serialize the sums.
  Bytes aggregate(core::PartyId p, ByteView payload);
  // Active side: decrypt one party's sums into ring elements.
  std::vector<std::vector<core::BucketSums>> decrypt_sums(core::PartyId p, ByteView payload,
                                                          std::size_t num_nodes) const;

  crypto::PaillierRandom& active_rng_;
  std::vector<std::unique_ptr<crypto::PaillierRandom>> passive_rngs_;
  std::vector<crypto::PaillierCiphertext> enc_g_;
  std::vector<crypto::PaillierCiphertext> enc_h_;
};

}  // namespace teeboost::proto

#endif  // TEEBOOST_PROTOCOLS_SECUREBOOST_H_
