#include "teeboost/protocols/session.h"

#include <chrono>
#include <string>

#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"
#include "teeboost/crypto/pad.h"
#include "teeboost/protocols/ntee.h"
#include "teeboost/protocols/onetee.h"
#include "teeboost/protocols/secureboost.h"

namespace teeboost::proto {

using fed::Mode;

namespace {

std::vector<bool> default_enclaves(Mode mode, std::size_t parties) {
  std::vector<bool> out(parties, false);
  if (mode == Mode::kNTee) out.assign(parties, true);
  if (mode == Mode::kOneTee) out[0] = true;
  return out;
}

std::unique_ptr<fed::EnclaveProgram> program_for(Mode mode, core::PartyId p) {
  if (mode == Mode::kOneTee) return std::make_unique<OneTeeProgram>();
  return std::make_unique<NTeeProgram>(p);
}

}  // namespace

Session::Session(const core::VerticalDataset& data, SessionOptions options)
    : data_(data), options_(std::move(options)), net_(options_.retain_payloads) {
  const auto start = std::chrono::steady_clock::now();
  options_.params.validate();
  if (data.num_samples() == 0) throw UsageError("dataset has no samples");
  if (data.num_parties() == 0) throw UsageError("dataset has no parties");

  std::vector<bool> enclaves =
      options_.enclaves.value_or(default_enclaves(options_.mode, data.num_parties()));
  if (enclaves.size() != data.num_parties()) {
    throw ConfigError("enclave placement lists " + std::to_string(enclaves.size()) +
                      " parties, dataset has " + std::to_string(data.num_parties()));
  }

  parties_.reserve(data.num_parties());
  for (core::PartyId p = 0; p < data.num_parties(); ++p) {
    auto labels = p == core::kActiveParty ? data.labels() : std::span<const std::uint8_t>{};
    parties_.emplace_back(p, data.party(p), options_.params.bins, labels);
    if (enclaves[p]) {
      parties_.back().install_enclave(std::make_unique<fed::EnclaveHost>(
          program_for(options_.mode, p), options_.enclave_memory));
    }
  }

  rng_ = options_.crypto_seed
             ? std::make_unique<crypto::PaillierRandom>(derive_seed(*options_.crypto_seed, 1))
             : std::make_unique<crypto::PaillierRandom>();
  fed::establish_channels(parties_, options_.mode, net_, {options_.paillier_bits}, *rng_);

  ctx_ = std::make_unique<ProtocolContext>(
      ProtocolContext{net_, parties_, options_.params, {}, {}, {}, {}, options_.record_view});
  switch (options_.mode) {
    case Mode::kPlaintext:
      strategy_ = std::make_unique<PlaintextStrategy>(*ctx_);
      break;
    case Mode::kSecureBoost:
      strategy_ = std::make_unique<SecureBoostStrategy>(*ctx_, *rng_, options_.crypto_seed);
      break;
    case Mode::kNTee:
      strategy_ = std::make_unique<NTeeStrategy>(*ctx_);
      break;
    case Mode::kOneTee: {
      crypto::PadSeed seed = options_.crypto_seed
                                 ? crypto::pad_seed_from(derive_seed(*options_.crypto_seed, 2))
                                 : crypto::generate_pad_seed();
      strategy_ = std::make_unique<OneTeeStrategy>(*ctx_, seed);
      break;
    }
  }
  setup_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Session::~Session() = default;

core::TrainResult Session::train(std::span<const double> base_margin) {
  return core::train(data_.labels(), options_.params, *strategy_, base_margin);
}

std::vector<core::SplitRecordTable> Session::records() const {
  std::vector<core::SplitRecordTable> out;
  for (const auto& p : parties_) out.push_back(p.records());
  return out;
}

std::string Session::fingerprint(const core::BoostedModel& model) const {
  auto r = records();
  return core::model_fingerprint(model, r);
}

}  // namespace teeboost::proto
