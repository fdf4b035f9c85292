#include "teeboost/crypto/pad.h"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <memory>
#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::crypto {

PadSeed generate_pad_seed() {
  PadSeed s{};
  if (RAND_bytes(s.data(), static_cast<int>(s.size())) != 1) throw Error("RAND_bytes failed");
  return s;
}

PadSeed pad_seed_from(std::uint64_t value) {
  PadSeed s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(value >> (8 * i));
  s[8] = 0x70;  // 'p'
  return s;
}

PadVector gen_pads(const PadSeed& seed, std::uint64_t round, std::size_t n) {
  std::array<std::uint8_t, 16> iv{};
  for (int i = 0; i < 8; ++i) iv[i] = static_cast<std::uint8_t>(round >> (56 - 8 * i));
  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(),
                                                                       &EVP_CIPHER_CTX_free);
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ctr(), nullptr, seed.data(), iv.data()) != 1) {
    throw Error("AES-CTR init failed");
  }
  std::vector<std::uint8_t> zeros(n * 16, 0), stream(n * 16);
  int len = 0;
  if (n > 0 && EVP_EncryptUpdate(ctx.get(), stream.data(), &len, zeros.data(),
                                 static_cast<int>(zeros.size())) != 1) {
    throw Error("AES-CTR keystream failed");
  }
  PadVector out;
  out.g.resize(n);
  out.h.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    RingElem g = 0, h = 0;
    for (int b = 0; b < 8; ++b) {
      g |= static_cast<RingElem>(stream[16 * i + b]) << (8 * b);
      h |= static_cast<RingElem>(stream[16 * i + 8 + b]) << (8 * b);
    }
    out.g[i] = g;
    out.h[i] = h;
  }
  return out;
}

RingElem unmask_sum(RingElem masked_sum, std::span<const std::uint32_t> indices,
                    std::span<const RingElem> pads) {
  RingElem acc = masked_sum;
  for (auto i : indices) {
    if (i >= pads.size()) {
      throw ProtocolError("unmask_sum: sample " + std::to_string(i) + " has no pad");
    }
    acc -= pads[i];
  }
  return acc;
}

}  // namespace teeboost::crypto
