#ifndef TEEBOOST_FEDERATION_TOPOLOGY_H_
#define TEEBOOST_FEDERATION_TOPOLOGY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "teeboost/crypto/paillier.h"
#include "teeboost/federation/channel.h"
#include "teeboost/federation/party.h"

namespace teeboost::fed {

enum class Mode { kPlaintext, kSecureBoost, kNTee, kOneTee };

// Accepts "plaintext", "secureboost", "ntee", "onetee" (also "n_tee",
// "one_tee"). UsageError otherwise.
Mode parse_mode(std::string_view name);
std::string_view mode_name(Mode mode);

// Code identities the attestation stub checks for.
inline constexpr std::string_view kNTeeIdentity = "teeboost.ntee.v1";
inline constexpr std::string_view kOneTeeIdentity = "teeboost.onetee.v1";

struct TopologyOptions {
  std::size_t paillier_bits = 2048;
};

// Checks the parties fit `mode` and places keys:
//  secureboost  Paillier keypair at the active party, public key sent to each
//               passive party over the network (setup phase);
//  ntee         channel key generated in the active enclave and provisioned
//               to every passive enclave after attestation;
//  onetee       channel key generated in the active enclave and handed to
//               every passive host after attestation; the active host gets
//               nothing.
// ConfigError on any topology/mode mismatch.
void establish_channels(std::vector<Party>& parties, Mode mode, Network& net,
                        const TopologyOptions& options, crypto::PaillierRandom& rng);

// ConfigError unless party ids are 0..m-1 in order and at least two parties
// exist for a federated mode.
void check_parties(const std::vector<Party>& parties, Mode mode);

}  // namespace teeboost::fed

#endif  // TEEBOOST_FEDERATION_TOPOLOGY_H_
