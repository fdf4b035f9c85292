#ifndef TEEBOOST_PROTOCOLS_SESSION_H_
#define TEEBOOST_PROTOCOLS_SESSION_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "teeboost/core/booster.h"
#include "teeboost/core/dataset.h"
#include "teeboost/crypto/paillier.h"
#include "teeboost/federation/channel.h"
#include "teeboost/federation/party.h"
#include "teeboost/federation/topology.h"
#include "teeboost/protocols/strategy.h"

namespace teeboost::proto {

struct SessionOptions {
  fed::Mode mode = fed::Mode::kPlaintext;
  core::Hyperparams params;
  std::size_t paillier_bits = 2048;
  // Fixes Paillier keys, encryption randomness and pad seeds. Unset draws
  // everything from the OS.
  std::optional<std::uint64_t> crypto_seed;
  // Enclave memory budget in bytes; 0 is unlimited.
  std::size_t enclave_memory = 0;
  // Which parties get an enclave. Unset places what the mode needs.
  std::optional<std::vector<bool>> enclaves;
  bool retain_payloads = false;
  bool record_view = true;
};

// One federation over one dataset: parties, enclaves, keys, network and the
// strategy for the chosen mode. Setup (key placement) happens in the
// constructor and is the only traffic outside training.
class Session {
 public:
  Session(const core::VerticalDataset& data, SessionOptions options);
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  core::TrainResult train(std::span<const double> base_margin = {});

  fed::Mode mode() const { return options_.mode; }
  const SessionOptions& options() const { return options_; }
  fed::Network& network() { return net_; }
  const fed::Network& network() const { return net_; }
  std::vector<fed::Party>& parties() { return parties_; }
  const std::vector<fed::Party>& parties() const { return parties_; }
  core::SplitStrategy& strategy() { return *strategy_; }
  const ProtocolContext& context() const { return *ctx_; }
  double setup_seconds() const { return setup_seconds_; }

  // Every party's split records, indexed by party id.
  std::vector<core::SplitRecordTable> records() const;
  std::string fingerprint(const core::BoostedModel& model) const;

 private:
  const core::VerticalDataset& data_;
  SessionOptions options_;
  fed::Network net_;
  std::vector<fed::Party> parties_;
  std::unique_ptr<crypto::PaillierRandom> rng_;
  std::unique_ptr<ProtocolContext> ctx_;
  std::unique_ptr<ProtocolStrategy> strategy_;
  double setup_seconds_ = 0.0;
};

}  // namespace teeboost::proto

#endif  // TEEBOOST_PROTOCOLS_SESSION_H_
