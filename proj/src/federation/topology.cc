#include "teeboost/federation/topology.h"

#include <memory>
#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::fed {

Mode parse_mode(std::string_view name) {
  if (name == "plaintext") return Mode::kPlaintext;
  if (name == "secureboost") return Mode::kSecureBoost;
  if (name == "ntee" || name == "n_tee") return Mode::kNTee;
  if (name == "onetee" || name == "one_tee") return Mode::kOneTee;
  throw UsageError("unknown protocol '" + std::string(name) +
                   "' (expected plaintext, secureboost, ntee or onetee)");
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::kPlaintext: return "plaintext";
    case Mode::kSecureBoost: return "secureboost";
    case Mode::kNTee: return "ntee";
    case Mode::kOneTee: return "onetee";
  }
  return "unknown";
}

void check_parties(const std::vector<Party>& parties, Mode mode) {
  if (parties.empty()) throw ConfigError("no parties");
  for (std::size_t i = 0; i < parties.size(); ++i) {
    if (parties[i].id() != i) {
      throw ConfigError("party at position " + std::to_string(i) + " has id " +
                        std::to_string(parties[i].id()));
    }
  }
  if (mode != Mode::kPlaintext && parties.size() < 2) {
    throw ConfigError(std::string(mode_name(mode)) + " needs at least one passive party");
  }
}

namespace {

void require_enclave(const Party& p, Mode mode) {
  if (p.enclave() == nullptr) {
    throw ConfigError(std::string(mode_name(mode)) + ": party " + std::to_string(p.id()) +
                      " has no enclave");
  }
}

}  // namespace

void establish_channels(std::vector<Party>& parties, Mode mode, Network& net,
                        const TopologyOptions& options, crypto::PaillierRandom& rng) {
  check_parties(parties, mode);
  Party& active = parties[kActiveParty];
  switch (mode) {
    case Mode::kPlaintext:
      return;

    case Mode::kSecureBoost: {
      auto kp = crypto::paillier_keygen(options.paillier_bits, rng);
      active.keys().paillier_public = kp.public_key;
      active.keys().paillier_secret =
          std::make_shared<const crypto::PaillierSecretKey>(std::move(kp.secret_key));
      Bytes pk = kp.public_key.serialize();
      for (std::size_t i = 1; i < parties.size(); ++i) {
        auto to = static_cast<PartyId>(i);
        net.send({Phase::kSetup, host(kActiveParty), host(to), MessageKind::kPaillierPublicKey, pk});
        Message m = net.receive(host(kActiveParty), host(to), MessageKind::kPaillierPublicKey);
        parties[i].keys().paillier_public = crypto::PaillierPublicKey::deserialize(m.payload);
      }
      return;
    }

    case Mode::kNTee: {
      for (const auto& p : parties) require_enclave(p, mode);
      EnclaveHost& root = *active.enclave();
      if (root.code_identity() != kNTeeIdentity) {
        throw ConfigError("active enclave runs '" + root.code_identity() + "', expected '" +
                          std::string(kNTeeIdentity) + "'");
      }
      root.generate_channel_key();
      for (std::size_t i = 1; i < parties.size(); ++i) {
        root.provision_enclave(*parties[i].enclave(), kNTeeIdentity);
      }
      return;
    }

    case Mode::kOneTee: {
      require_enclave(active, mode);
      EnclaveHost& root = *active.enclave();
      root.generate_channel_key();
      for (std::size_t i = 1; i < parties.size(); ++i) {
        parties[i].keys().symmetric = root.provision_verifier(kOneTeeIdentity);
      }
      return;
    }
  }
}

}  // namespace teeboost::fed
