#ifndef TEEBOOST_CRYPTO_SEAL_H_
#define TEEBOOST_CRYPTO_SEAL_H_

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <set>

#include "teeboost/common/bytes.h"

namespace teeboost::crypto {

using SymmetricKey = std::array<std::uint8_t, 16>;
using Nonce = std::array<std::uint8_t, 12>;
using Tag = std::array<std::uint8_t, 16>;

inline constexpr std::size_t kSealOverhead = 12 + 16;

SymmetricKey generate_symmetric_key();

// AES-128-GCM output. Wire form is nonce || ciphertext || tag.
struct SealedBlob {
  Nonce nonce{};
  Bytes ciphertext;
  Tag tag{};

  std::size_t wire_size() const { return kSealOverhead + ciphertext.size(); }
  Bytes serialize() const;
  // ProtocolError if shorter than the fixed overhead.
  static SealedBlob parse(ByteView wire);
};

SealedBlob sym_seal(const SymmetricKey& key, const Nonce& nonce, ByteView plaintext);
// IntegrityError on authentication failure.
Bytes sym_open(const SymmetricKey& key, const SealedBlob& blob);

// Seals under one key with nonces sender_tag || counter. Distinct senders
// sharing a key must use distinct tags. The counter is the only mutable state.
class Sealer {
 public:
  Sealer(const SymmetricKey& key, std::uint32_t sender_tag) : key_(key), sender_tag_(sender_tag) {}

  SealedBlob seal(ByteView plaintext);
  std::uint64_t sealed_count() const { return counter_.load(); }

 private:
  SymmetricKey key_;
  std::uint32_t sender_tag_;
  std::atomic<std::uint64_t> counter_{0};
};

// Opens blobs and refuses any nonce it has already accepted.
class Opener {
 public:
  explicit Opener(const SymmetricKey& key) : key_(key) {}

  Bytes open(const SealedBlob& blob);
  Bytes open(ByteView wire) { return open(SealedBlob::parse(wire)); }

 private:
  SymmetricKey key_;
  std::mutex mu_;
  std::set<Nonce> seen_;
};

}  // namespace teeboost::crypto

#endif  // TEEBOOST_CRYPTO_SEAL_H_
