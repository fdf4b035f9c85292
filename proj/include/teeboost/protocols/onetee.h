#ifndef TEEBOOST_PROTOCOLS_ONETEE_H_
#define TEEBOOST_PROTOCOLS_ONETEE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "teeboost/crypto/pad.h"
#include "teeboost/crypto/seal.h"
#include "teeboost/federation/enclave.h"
#include "teeboost/protocols/strategy.h"

namespace teeboost::proto {

// Enclave code for the active party in 1-TEE: holds the pad seed, opens the
// passive parties' sealed masked bucket sums, removes the pads and scans.
class OneTeeProgram final : public fed::EnclaveProgram {
 public:
  enum Function : std::uint32_t {
    kSetPadSeed = 1,  // 16-byte seed
    kDecide = 2,      // see OneTeeStrategy::run_level for the layout
  };

  std::string identity() const override;
  Bytes invoke(std::uint32_t function, ByteView input) override;

 protected:
  void on_channel_key() override;

 private:
  Bytes decide(ByteView input);
  const crypto::PadVector& pads_for(std::uint64_t round, std::size_t n);

  std::unique_ptr<crypto::Opener> opener_;
  std::optional<crypto::PadSeed> seed_;
  std::optional<std::uint64_t> pad_round_;
  crypto::PadVector pads_;
};

// Masked gradients go to passive hosts in the clear; they return sealed
// masked sums with bucket member lists; only the active enclave unmasks.
class OneTeeStrategy final : public ProtocolStrategy {
 public:
  OneTeeStrategy(ProtocolContext& ctx, const crypto::PadSeed& seed);

 protected:
  void on_begin_tree() override;
  std::vector<std::optional<core::SplitDecision>> run_level(
      std::uint32_t level, std::span<const core::LevelTask> tasks) override;

 private:
  Bytes masked_gradients(std::span<const core::LevelTask> tasks) const;
  Bytes sealed_sums(core::PartyId p, ByteView payload);

  crypto::PadSeed seed_;
  crypto::PadVector pads_;
  std::set<std::uint32_t> used_rounds_;
  std::vector<std::unique_ptr<crypto::Sealer>> sealers_;
};

}  // namespace teeboost::proto

#endif  // TEEBOOST_PROTOCOLS_ONETEE_H_
