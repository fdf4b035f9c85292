#ifndef TEEBOOST_FEDERATION_PARTY_H_
#define TEEBOOST_FEDERATION_PARTY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "teeboost/core/dataset.h"
#include "teeboost/core/thresholds.h"
#include "teeboost/core/tree.h"
#include "teeboost/crypto/paillier.h"
#include "teeboost/crypto/seal.h"
#include "teeboost/federation/enclave.h"

namespace teeboost::fed {

using core::PartyId;
using core::SampleId;
using core::kActiveParty;

enum class Role { kActive, kPassive };

// Keys visible to a party's host process. Enclave-held keys are not here.
struct KeyStore {
  std::optional<crypto::PaillierPublicKey> paillier_public;
  std::shared_ptr<const crypto::PaillierSecretKey> paillier_secret;
  std::optional<crypto::SymmetricKey> symmetric;
};

class Party {
 public:
  // Party 0 is active and must be given the labels; others must not.
  Party(PartyId id, const core::FeatureMatrix& features, std::size_t bins,
        std::span<const std::uint8_t> labels = {});

  PartyId id() const { return id_; }
  Role role() const { return id_ == core::kActiveParty ? Role::kActive : Role::kPassive; }
  bool is_active() const { return role() == Role::kActive; }

  const core::FeatureMatrix& features() const { return *features_; }
  const core::FeatureBinning& binning() const { return binning_; }
  std::span<const std::uint8_t> labels() const;

  KeyStore& keys() { return keys_; }
  const KeyStore& keys() const { return keys_; }

  EnclaveHost* enclave() { return enclave_.get(); }
  const EnclaveHost* enclave() const { return enclave_.get(); }
  void install_enclave(std::unique_ptr<EnclaveHost> enclave) { enclave_ = std::move(enclave); }

  const core::SplitRecordTable& records() const { return records_; }
  // Stores (feature, threshold index) with its threshold value.
  std::uint64_t record_split(std::uint32_t feature, std::uint32_t threshold);

  // I_L: instances whose bucket on the recorded feature is <= the recorded
  // threshold index. UsageError for an unknown record id.
  std::pair<std::vector<SampleId>, std::vector<SampleId>> partition_node(
      std::uint64_t record_id, std::span<const SampleId> instances) const;

  // Left/right for `rows` of `columns` (this party's slice of some dataset).
  std::vector<bool> directions(std::uint64_t record_id, std::span<const SampleId> rows,
                               const core::FeatureMatrix& columns) const;

 private:
  PartyId id_;
  const core::FeatureMatrix* features_;
  core::FeatureBinning binning_;
  std::span<const std::uint8_t> labels_;
  KeyStore keys_;
  std::unique_ptr<EnclaveHost> enclave_;
  core::SplitRecordTable records_;
};

}  // namespace teeboost::fed

#endif  // TEEBOOST_FEDERATION_PARTY_H_
