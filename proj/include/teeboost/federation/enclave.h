#ifndef TEEBOOST_FEDERATION_ENCLAVE_H_
#define TEEBOOST_FEDERATION_ENCLAVE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teeboost/common/bytes.h"
#include "teeboost/crypto/seal.h"

namespace teeboost::fed {

// Code loaded into an enclave. All state lives here; the host reaches it only
// through invoke(), which takes and returns opaque bytes.
class EnclaveProgram {
 public:
  virtual ~EnclaveProgram() = default;

  virtual std::string identity() const = 0;
  virtual Bytes invoke(std::uint32_t function, ByteView input) = 0;

 protected:
  const std::optional<crypto::SymmetricKey>& channel_key() const { return channel_key_; }
  std::size_t memory_budget() const { return memory_budget_; }
  // Runs after a channel key has been generated or provisioned.
  virtual void on_channel_key() {}

 private:
  friend class EnclaveHost;
  std::optional<crypto::SymmetricKey> channel_key_;
  std::size_t memory_budget_ = 0;
};

struct EnclaveStats {
  std::uint64_t ecalls = 0;
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
};

// Host-side handle on a simulated enclave. The host can call in with bytes,
// read the code identity (the attestation stub), and take part in key
// provisioning; it never sees program state.
class EnclaveHost {
 public:
  // memory_budget of 0 means unlimited.
  EnclaveHost(std::unique_ptr<EnclaveProgram> program, std::size_t memory_budget);

  std::string code_identity() const { return program_->identity(); }
  std::size_t memory_budget() const { return program_->memory_budget_; }

  Bytes ecall(std::uint32_t function, ByteView input);

  bool has_channel_key() const { return program_->channel_key_.has_value(); }
  void generate_channel_key();
  // Attested enclave-to-enclave provisioning: ConfigError unless the peer
  // reports `expected_identity`.
  void provision_enclave(EnclaveHost& peer, std::string_view expected_identity) const;
  // A party without an enclave attests this one and receives the key over the
  // secure channel. ConfigError if our identity is not `expected_identity`.
  crypto::SymmetricKey provision_verifier(std::string_view expected_identity) const;

  const EnclaveStats& stats() const { return stats_; }

 private:
  std::unique_ptr<EnclaveProgram> program_;
  EnclaveStats stats_;
};

// Enclave-private paging for inputs over the memory budget. The plaintext is
// re-sealed under a fresh enclave key into pages that live outside the
// enclave and are brought back one at a time.
class PagedStore {
 public:
  // Pages hold whole records of record_bytes each.
  PagedStore(ByteView plaintext, std::size_t page_bytes, std::size_t record_bytes);

  std::size_t num_pages() const { return pages_.size(); }
  Bytes load(std::size_t page);
  std::uint64_t page_loads() const { return loads_; }

 private:
  crypto::SymmetricKey key_;
  std::vector<crypto::SealedBlob> pages_;
  std::uint64_t loads_ = 0;
};

}  // namespace teeboost::fed

#endif  // TEEBOOST_FEDERATION_ENCLAVE_H_
