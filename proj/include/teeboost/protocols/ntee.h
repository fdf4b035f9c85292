#ifndef TEEBOOST_PROTOCOLS_NTEE_H_
#define TEEBOOST_PROTOCOLS_NTEE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "teeboost/core/split.h"
#include "teeboost/crypto/seal.h"
#include "teeboost/federation/enclave.h"
#include "teeboost/protocols/strategy.h"

namespace teeboost::proto {

// Enclave code shared by every party in N-TEE. The active instance seals
// gradients and picks winners; passive instances scan their party's buckets
// and keep the chosen feature and threshold until told they won.
class NTeeProgram final : public fed::EnclaveProgram {
 public:
  enum Function : std::uint32_t {
    kLoadBins = 1,       // passive: u32 features; per feature u32 buckets, u32 n, n x u32 bins; f64 lambda
    kSealGradients = 2,  // active: u32 recipients, then the plaintext to seal for each
    kScan = 3,           // passive: sealed gradients -> sealed best scores
    kDecide = 4,         // active: local scores + sealed scores -> winners
    kReveal = 5,         // passive: sealed winner list -> (node, feature, threshold) triples
  };

  explicit NTeeProgram(core::PartyId self) : self_(self) {}

  std::string identity() const override;
  Bytes invoke(std::uint32_t function, ByteView input) override;

  std::uint64_t page_loads() const { return page_loads_; }

 protected:
  void on_channel_key() override;

 private:
  Bytes load_bins(ByteView input);
  Bytes seal_gradients(ByteView input);
  Bytes scan(ByteView input);
  Bytes decide(ByteView input);
  Bytes reveal(ByteView input);

  core::PartyId self_;
  std::unique_ptr<crypto::Sealer> sealer_;
  std::unique_ptr<crypto::Opener> opener_;
  std::vector<std::vector<std::uint32_t>> bins_;
  std::vector<std::uint32_t> num_buckets_;
  double lambda_ = 1.0;
  std::vector<core::LocalBest> last_best_;
  std::uint64_t page_loads_ = 0;
};

// Every party runs NTeeProgram; gradients travel sealed between enclaves and
// only one best score per node and party comes back.
class NTeeStrategy final : public ProtocolStrategy {
 public:
  explicit NTeeStrategy(ProtocolContext& ctx);

 protected:
  void on_begin_tree() override;
  std::vector<std::optional<core::SplitDecision>> run_level(
      std::uint32_t level, std::span<const core::LevelTask> tasks) override;

 private:
  bool bins_loaded_ = false;
};

}  // namespace teeboost::proto

#endif  // TEEBOOST_PROTOCOLS_NTEE_H_
