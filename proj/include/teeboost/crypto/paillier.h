#ifndef TEEBOOST_CRYPTO_PAILLIER_H_
#define TEEBOOST_CRYPTO_PAILLIER_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>

#include "teeboost/common/bytes.h"
#include "teeboost/crypto/fixed_point.h"

namespace teeboost::crypto {

// Source of Paillier randomness and primes. Seeded instances are
// deterministic (test mode); unseeded ones draw their seed from the OS.
class PaillierRandom {
 public:
  explicit PaillierRandom(std::optional<std::uint64_t> seed = std::nullopt);

  // Uniform in [0, bound).
  mpz_class below(const mpz_class& bound);
  mpz_class bits(std::size_t n);

 private:
  gmp_randclass state_;
};

struct PaillierCiphertext {
  mpz_class value;
};

// Signed plaintexts are embedded as residues mod n: values in [n - 2^63, n)
// read back as negative.
inline constexpr std::uint64_t kNegativeWindow = 1ULL << 63;

class PaillierPublicKey {
 public:
  PaillierPublicKey() = default;
  explicit PaillierPublicKey(mpz_class n);

  const mpz_class& n() const { return n_; }
  const mpz_class& n_squared() const { return n_squared_; }
  std::size_t key_bits() const { return mpz_sizeinbase(n_.get_mpz_t(), 2); }
  // Fixed serialized width of one ciphertext.
  std::size_t ciphertext_bytes() const { return ct_bytes_; }

  // (1 + m n) r^n mod n^2 with fresh r. m must be in [0, n).
  PaillierCiphertext encrypt(const mpz_class& m, PaillierRandom& rng) const;
  PaillierCiphertext add(const PaillierCiphertext& a, const PaillierCiphertext& b) const;
  void add_inplace(PaillierCiphertext& acc, const PaillierCiphertext& b) const;

  // RangeError unless 0 <= c < n^2.
  void check(const PaillierCiphertext& c) const;

  mpz_class embed(RingElem r) const;
  // RangeError when m is outside both the positive and negative windows.
  RingElem extract(const mpz_class& m) const;

  // Big-endian, zero-padded to ciphertext_bytes().
  void write(const PaillierCiphertext& c, ByteWriter& w) const;
  PaillierCiphertext read(ByteReader& r) const;

  // u32 byte length followed by big-endian n.
  Bytes serialize() const;
  static PaillierPublicKey deserialize(ByteView data);

  friend bool operator==(const PaillierPublicKey& a, const PaillierPublicKey& b) {
    return a.n_ == b.n_;
  }

 private:
  mpz_class n_;
  mpz_class n_squared_;
  std::size_t ct_bytes_ = 0;
};

class PaillierSecretKey {
 public:
  PaillierSecretKey(mpz_class p, mpz_class q);

  const PaillierPublicKey& public_key() const { return pub_; }
  const mpz_class& lambda() const { return lambda_; }
  const mpz_class& mu() const { return mu_; }

  // CRT decryption over p^2 and q^2.
  mpz_class decrypt(const PaillierCiphertext& c) const;
  // L(c^lambda mod n^2) * mu mod n; independent of the CRT route.
  mpz_class decrypt_textbook(const PaillierCiphertext& c) const;
  // Same distribution as the public encrypt, with r^n computed by CRT.
  PaillierCiphertext encrypt(const mpz_class& m, PaillierRandom& rng) const;

 private:
  PaillierPublicKey pub_;
  mpz_class p_, q_, p2_, q2_;
  mpz_class lambda_, mu_;
  mpz_class hp_, hq_;          // decryption constants
  mpz_class q_inv_p_;          // q^{-1} mod p
  mpz_class q2_inv_p2_;        // (q^2)^{-1} mod p^2
  mpz_class n_mod_phi_p2_;     // n mod p(p-1)
  mpz_class n_mod_phi_q2_;     // n mod q(q-1)
};

struct PaillierKeypair {
  PaillierPublicKey public_key;
  PaillierSecretKey secret_key;
};

// Two random primes of bits/2 bits each (64 Miller-Rabin rounds), product of
// exactly `bits` bits, g = n + 1.
PaillierKeypair paillier_keygen(std::size_t bits, PaillierRandom& rng);

}  // namespace teeboost::crypto

#endif  // TEEBOOST_CRYPTO_PAILLIER_H_
