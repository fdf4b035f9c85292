#include "teeboost/crypto/seal.h"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <memory>

#include "teeboost/common/errors.h"

namespace teeboost::crypto {

namespace {

struct CtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, CtxDeleter>;

CtxPtr new_ctx() {
  CtxPtr ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error("EVP_CIPHER_CTX_new failed");
  return ctx;
}

}  // namespace

SymmetricKey generate_symmetric_key() {
  SymmetricKey key{};
  if (RAND_bytes(key.data(), static_cast<int>(key.size())) != 1) throw Error("RAND_bytes failed");
  return key;
}

Bytes SealedBlob::serialize() const {
  ByteWriter w(wire_size());
  w.raw(nonce);
  w.raw(ciphertext);
  w.raw(tag);
  return w.take();
}

SealedBlob SealedBlob::parse(ByteView wire) {
  if (wire.size() < kSealOverhead) throw ProtocolError("sealed blob shorter than its header");
  SealedBlob b;
  std::copy_n(wire.begin(), b.nonce.size(), b.nonce.begin());
  b.ciphertext.assign(wire.begin() + b.nonce.size(), wire.end() - b.tag.size());
  std::copy_n(wire.end() - b.tag.size(), b.tag.size(), b.tag.begin());
  return b;
}

SealedBlob sym_seal(const SymmetricKey& key, const Nonce& nonce, ByteView plaintext) {
  auto ctx = new_ctx();
  SealedBlob out;
  out.nonce = nonce;
  out.ciphertext.resize(plaintext.size());
  int len = 0;
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, nullptr, nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()),
                          nullptr) != 1 ||
      EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), nonce.data()) != 1) {
    throw Error("AES-GCM encrypt init failed");
  }
  if (!plaintext.empty() &&
      EVP_EncryptUpdate(ctx.get(), out.ciphertext.data(), &len, plaintext.data(),
                        static_cast<int>(plaintext.size())) != 1) {
    throw Error("AES-GCM encrypt failed");
  }
  int tail = 0;
  if (EVP_EncryptFinal_ex(ctx.get(), out.ciphertext.data() + len, &tail) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, static_cast<int>(out.tag.size()),
                          out.tag.data()) != 1) {
    throw Error("AES-GCM finalize failed");
  }
  return out;
}

Bytes sym_open(const SymmetricKey& key, const SealedBlob& blob) {
  auto ctx = new_ctx();
  Bytes out(blob.ciphertext.size());
  int len = 0;
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_gcm(), nullptr, nullptr, nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(blob.nonce.size()),
                          nullptr) != 1 ||
      EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(), blob.nonce.data()) != 1) {
    throw Error("AES-GCM decrypt init failed");
  }
  if (!blob.ciphertext.empty() &&
      EVP_DecryptUpdate(ctx.get(), out.data(), &len, blob.ciphertext.data(),
                        static_cast<int>(blob.ciphertext.size())) != 1) {
    throw IntegrityError("sealed blob failed to decrypt");
  }
  Tag tag = blob.tag;
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, static_cast<int>(tag.size()),
                          tag.data()) != 1) {
    throw Error("AES-GCM set tag failed");
  }
  int tail = 0;
  if (EVP_DecryptFinal_ex(ctx.get(), out.data() + len, &tail) != 1) {
    throw IntegrityError("sealed blob failed authentication");
  }
  return out;
}

SealedBlob Sealer::seal(ByteView plaintext) {
  std::uint64_t counter = counter_.fetch_add(1);
  Nonce nonce{};
  for (int i = 0; i < 4; ++i) nonce[i] = static_cast<std::uint8_t>(sender_tag_ >> (8 * i));
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<std::uint8_t>(counter >> (8 * i));
  return sym_seal(key_, nonce, plaintext);
}

Bytes Opener::open(const SealedBlob& blob) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (seen_.contains(blob.nonce)) throw IntegrityError("sealed blob nonce replayed");
  }
  Bytes out = sym_open(key_, blob);
  std::lock_guard<std::mutex> lock(mu_);
  if (!seen_.insert(blob.nonce).second) throw IntegrityError("sealed blob nonce replayed");
  return out;
}

}  // namespace teeboost::crypto
