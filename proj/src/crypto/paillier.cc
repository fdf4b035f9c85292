#include "teeboost/crypto/paillier.h"

#include <openssl/rand.h>

#include <array>
#include <string>
#include <vector>

#include "teeboost/common/errors.h"

namespace teeboost::crypto {

namespace {

constexpr int kMillerRabinRounds = 64;

std::uint64_t os_seed() {
  std::array<unsigned char, 8> buf{};
  if (RAND_bytes(buf.data(), static_cast<int>(buf.size())) != 1) {
    throw Error("RAND_bytes failed");
  }
  std::uint64_t s = 0;
  for (auto b : buf) s = (s << 8) | b;
  return s;
}

mpz_class random_prime(std::size_t bits, PaillierRandom& rng) {
  for (;;) {
    mpz_class c = rng.bits(bits);
    mpz_setbit(c.get_mpz_t(), bits - 1);
    mpz_setbit(c.get_mpz_t(), bits - 2);
    mpz_setbit(c.get_mpz_t(), 0);
    while (mpz_sizeinbase(c.get_mpz_t(), 2) == bits) {
      if (mpz_probab_prime_p(c.get_mpz_t(), kMillerRabinRounds) > 0) return c;
      c += 2;
    }
  }
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
  mpz_class out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return out;
}

mpz_class invert(const mpz_class& a, const mpz_class& mod) {
  mpz_class out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t()) == 0) {
    throw ContractViolation("modular inverse does not exist");
  }
  return out;
}

// Random unit of Z_n.
mpz_class random_unit(const mpz_class& n, PaillierRandom& rng) {
  for (;;) {
    mpz_class r = rng.below(n);
    if (r == 0) continue;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
    if (g == 1) return r;
  }
}

void check_plaintext(const mpz_class& m, const mpz_class& n) {
  if (m < 0 || m >= n) throw RangeError("Paillier plaintext outside [0, n)");
}

}  // namespace

PaillierRandom::PaillierRandom(std::optional<std::uint64_t> seed) : state_(gmp_randinit_default) {
  state_.seed(static_cast<unsigned long>(seed ? *seed : os_seed()));
}

mpz_class PaillierRandom::below(const mpz_class& bound) { return state_.get_z_range(bound); }

mpz_class PaillierRandom::bits(std::size_t n) { return state_.get_z_bits(n); }

PaillierPublicKey::PaillierPublicKey(mpz_class n) : n_(std::move(n)) {
  if (n_ <= 1) throw UsageError("Paillier modulus must be > 1");
  n_squared_ = n_ * n_;
  ct_bytes_ = (mpz_sizeinbase(n_squared_.get_mpz_t(), 2) + 7) / 8;
}

PaillierCiphertext PaillierPublicKey::encrypt(const mpz_class& m, PaillierRandom& rng) const {
  check_plaintext(m, n_);
  mpz_class r = random_unit(n_, rng);
  mpz_class gm = (1 + m * n_) % n_squared_;
  PaillierCiphertext c;
  c.value = (gm * powm(r, n_, n_squared_)) % n_squared_;
  return c;
}

PaillierCiphertext PaillierPublicKey::add(const PaillierCiphertext& a,
                                          const PaillierCiphertext& b) const {
  check(a);
  check(b);
  PaillierCiphertext c;
  c.value = (a.value * b.value) % n_squared_;
  return c;
}

void PaillierPublicKey::add_inplace(PaillierCiphertext& acc, const PaillierCiphertext& b) const {
  acc.value *= b.value;
  acc.value %= n_squared_;
}

void PaillierPublicKey::check(const PaillierCiphertext& c) const {
  if (c.value < 0 || c.value >= n_squared_) {
    throw RangeError("Paillier ciphertext outside [0, n^2)");
  }
}

mpz_class PaillierPublicKey::embed(RingElem r) const {
  auto s = static_cast<std::int64_t>(r);
  mpz_class m;
  if (s >= 0) {
    mpz_set_ui(m.get_mpz_t(), static_cast<unsigned long>(s));
  } else {
    // n - |s|, computed without overflowing on INT64_MIN
    mpz_class mag;
    mpz_set_ui(mag.get_mpz_t(), static_cast<unsigned long>(-(r)));
    m = n_ - mag;
  }
  return m;
}

RingElem PaillierPublicKey::extract(const mpz_class& m) const {
  mpz_class window;
  mpz_set_ui(window.get_mpz_t(), static_cast<unsigned long>(kNegativeWindow));
  if (m >= 0 && m < window) {
    return static_cast<RingElem>(mpz_get_ui(m.get_mpz_t()));
  }
  if (m >= n_ - window && m < n_) {
    mpz_class mag = n_ - m;  // in (0, 2^63]
    return static_cast<RingElem>(0) - static_cast<RingElem>(mpz_get_ui(mag.get_mpz_t()));
  }
  throw RangeError("decrypted value outside the fixed-point window");
}

void PaillierPublicKey::write(const PaillierCiphertext& c, ByteWriter& w) const {
  check(c);
  std::vector<std::uint8_t> buf(ct_bytes_, 0);
  std::size_t count = 0;
  std::size_t need = (mpz_sizeinbase(c.value.get_mpz_t(), 2) + 7) / 8;
  if (c.value != 0) {
    mpz_export(buf.data() + (ct_bytes_ - need), &count, 1, 1, 1, 0, c.value.get_mpz_t());
  }
  w.raw(buf);
}

PaillierCiphertext PaillierPublicKey::read(ByteReader& r) const {
  ByteView raw = r.raw(ct_bytes_);
  PaillierCiphertext c;
  mpz_import(c.value.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
  check(c);
  return c;
}

Bytes PaillierPublicKey::serialize() const {
  std::size_t len = (mpz_sizeinbase(n_.get_mpz_t(), 2) + 7) / 8;
  std::vector<std::uint8_t> buf(len);
  std::size_t count = 0;
  mpz_export(buf.data(), &count, 1, 1, 1, 0, n_.get_mpz_t());
  ByteWriter w(len + 4);
  w.u32(static_cast<std::uint32_t>(len));
  w.raw(buf);
  return w.take();
}

PaillierPublicKey PaillierPublicKey::deserialize(ByteView data) {
  ByteReader r(data);
  std::uint32_t len = r.u32();
  ByteView raw = r.raw(len);
  r.expect_done();
  mpz_class n;
  mpz_import(n.get_mpz_t(), raw.size(), 1, 1, 1, 0, raw.data());
  return PaillierPublicKey(std::move(n));
}

PaillierSecretKey::PaillierSecretKey(mpz_class p, mpz_class q)
    : pub_(p * q), p_(std::move(p)), q_(std::move(q)) {
  if (p_ == q_) throw UsageError("Paillier primes must differ");
  const mpz_class& n = pub_.n();
  p2_ = p_ * p_;
  q2_ = q_ * q_;
  mpz_class pm1 = p_ - 1, qm1 = q_ - 1;
  mpz_lcm(lambda_.get_mpz_t(), pm1.get_mpz_t(), qm1.get_mpz_t());
  // With g = n + 1, L(g^lambda mod n^2) = lambda mod n.
  mu_ = invert(lambda_ % n, n);

  mpz_class g = n + 1;
  hp_ = invert(((powm(g, pm1, p2_) - 1) / p_) % p_, p_);
  hq_ = invert(((powm(g, qm1, q2_) - 1) / q_) % q_, q_);
  q_inv_p_ = invert(q_, p_);
  q2_inv_p2_ = invert(q2_, p2_);
  n_mod_phi_p2_ = n % (p_ * pm1);
  n_mod_phi_q2_ = n % (q_ * qm1);
}

mpz_class PaillierSecretKey::decrypt(const PaillierCiphertext& c) const {
  pub_.check(c);
  mpz_class mp = ((powm(c.value % p2_, p_ - 1, p2_) - 1) / p_) * hp_ % p_;
  mpz_class mq = ((powm(c.value % q2_, q_ - 1, q2_) - 1) / q_) * hq_ % q_;
  mpz_class diff = (mp - mq) % p_;
  if (diff < 0) diff += p_;
  return mq + q_ * ((diff * q_inv_p_) % p_);
}

mpz_class PaillierSecretKey::decrypt_textbook(const PaillierCiphertext& c) const {
  pub_.check(c);
  const mpz_class& n = pub_.n();
  mpz_class u = powm(c.value, lambda_, pub_.n_squared());
  return ((u - 1) / n) * mu_ % n;
}

PaillierCiphertext PaillierSecretKey::encrypt(const mpz_class& m, PaillierRandom& rng) const {
  const mpz_class& n = pub_.n();
  check_plaintext(m, n);
  mpz_class r = random_unit(n, rng);
  mpz_class xp = powm(r % p2_, n_mod_phi_p2_, p2_);
  mpz_class xq = powm(r % q2_, n_mod_phi_q2_, q2_);
  mpz_class diff = (xp - xq) % p2_;
  if (diff < 0) diff += p2_;
  mpz_class rn = xq + q2_ * ((diff * q2_inv_p2_) % p2_);
  PaillierCiphertext c;
  c.value = ((1 + m * n) % pub_.n_squared()) * rn % pub_.n_squared();
  return c;
}

PaillierKeypair paillier_keygen(std::size_t bits, PaillierRandom& rng) {
  if (bits < 64 || bits % 2 != 0) {
    throw UsageError("Paillier key size must be even and >= 64 bits, got " + std::to_string(bits));
  }
  for (;;) {
    mpz_class p = random_prime(bits / 2, rng);
    mpz_class q = random_prime(bits / 2, rng);
    if (p == q) continue;
    mpz_class n = p * q;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) != bits) continue;
    PaillierSecretKey sk(std::move(p), std::move(q));
    PaillierPublicKey pk = sk.public_key();
    return PaillierKeypair{std::move(pk), std::move(sk)};
  }
}

}  // namespace teeboost::crypto
