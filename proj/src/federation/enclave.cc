#include "teeboost/federation/enclave.h"

#include <algorithm>

#include "teeboost/common/errors.h"

namespace teeboost::fed {

EnclaveHost::EnclaveHost(std::unique_ptr<EnclaveProgram> program, std::size_t memory_budget)
    : program_(std::move(program)) {
  if (!program_) throw UsageError("enclave needs a program");
  program_->memory_budget_ = memory_budget;
}

Bytes EnclaveHost::ecall(std::uint32_t function, ByteView input) {
  ++stats_.ecalls;
  stats_.bytes_in += input.size();
  Bytes out = program_->invoke(function, input);
  stats_.bytes_out += out.size();
  return out;
}

void EnclaveHost::generate_channel_key() {
  program_->channel_key_ = crypto::generate_symmetric_key();
  program_->on_channel_key();
}

void EnclaveHost::provision_enclave(EnclaveHost& peer, std::string_view expected_identity) const {
  if (!program_->channel_key_) throw ConfigError("enclave has no channel key to provision");
  if (peer.code_identity() != expected_identity) {
    throw ConfigError("attestation failed: peer enclave runs '" + peer.code_identity() +
                      "', expected '" + std::string(expected_identity) + "'");
  }
  peer.program_->channel_key_ = program_->channel_key_;
  peer.program_->on_channel_key();
}

crypto::SymmetricKey EnclaveHost::provision_verifier(std::string_view expected_identity) const {
  if (!program_->channel_key_) throw ConfigError("enclave has no channel key to provision");
  if (code_identity() != expected_identity) {
    throw ConfigError("attestation failed: enclave runs '" + code_identity() + "', expected '" +
                      std::string(expected_identity) + "'");
  }
  return *program_->channel_key_;
}

PagedStore::PagedStore(ByteView plaintext, std::size_t page_bytes, std::size_t record_bytes)
    : key_(crypto::generate_symmetric_key()) {
  if (record_bytes == 0) throw UsageError("PagedStore: record size must be positive");
  std::size_t per_page = std::max<std::size_t>(1, page_bytes / record_bytes) * record_bytes;
  crypto::Sealer sealer(key_, 0);
  for (std::size_t off = 0; off < plaintext.size(); off += per_page) {
    std::size_t len = std::min(per_page, plaintext.size() - off);
    pages_.push_back(sealer.seal(plaintext.subspan(off, len)));
  }
}

Bytes PagedStore::load(std::size_t page) {
  ++loads_;
  return crypto::sym_open(key_, pages_.at(page));
}

}  // namespace teeboost::fed
