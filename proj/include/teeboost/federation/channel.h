#ifndef TEEBOOST_FEDERATION_CHANNEL_H_
#define TEEBOOST_FEDERATION_CHANNEL_H_

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "teeboost/common/bytes.h"
#include "teeboost/core/dataset.h"

namespace teeboost::fed {

using core::PartyId;

enum class Phase : std::uint8_t { kSetup, kGradients, kSplits, kDecision, kInference };
inline constexpr std::size_t kNumPhases = 5;

enum class MessageKind : std::uint8_t {
  kPaillierPublicKey,
  kEncryptedGradients,
  kEncryptedBucketSums,
  kSealedGradients,
  kSealedBestScores,
  kSealedWinners,
  kMaskedGradients,
  kSealedBucketSums,
  kSplitIndices,
  kSplitResult,
  kDirectionQuery,
  kDirectionReply,
};

std::string_view phase_name(Phase p);
std::string_view kind_name(MessageKind k);

// A party's host process, or the enclave it runs. Enclave traffic still
// crosses the network through the host, so it is counted the same way.
struct Endpoint {
  PartyId party = 0;
  bool enclave = false;

  auto operator<=>(const Endpoint&) const = default;
};

std::string to_string(const Endpoint& e);
inline Endpoint host(PartyId p) { return {p, false}; }
inline Endpoint enclave_of(PartyId p) { return {p, true}; }

struct Message {
  Phase phase = Phase::kSetup;
  Endpoint sender;
  Endpoint receiver;
  MessageKind kind = MessageKind::kSplitIndices;
  Bytes payload;
};

struct TranscriptRecord {
  std::uint32_t round = 0;
  std::uint32_t level = 0;
  Phase phase = Phase::kSetup;
  Endpoint sender;
  Endpoint receiver;
  MessageKind kind = MessageKind::kSplitIndices;
  std::uint64_t bytes = 0;
};

struct Receipt {
  std::uint64_t sequence = 0;
  std::uint64_t bytes = 0;
};

using PhaseBytes = std::array<std::uint64_t, kNumPhases>;

// In-process message fabric: FIFO per (sender, receiver) pair, exact byte
// counters, and a replayable transcript of every delivery.
class Network {
 public:
  // With retain_payloads the transcript keeps a copy of every payload so a
  // test can scan what the hosts saw.
  explicit Network(bool retain_payloads = false) : retain_payloads_(retain_payloads) {}

  // Round/level stamped on subsequent transcript records.
  void set_context(std::uint32_t round, std::uint32_t level) {
    round_ = round;
    level_ = level;
  }

  Receipt send(Message msg);
  // ProtocolError when the queue is empty or the head has a different kind.
  Message receive(Endpoint from, Endpoint to, MessageKind expected);

  std::size_t pending() const;

  std::uint64_t total_bytes() const { return total_; }
  // Everything except one-time setup.
  std::uint64_t training_bytes() const;
  std::uint64_t bytes(Phase p) const { return by_phase_[static_cast<std::size_t>(p)]; }
  std::uint64_t bytes(PartyId from, PartyId to) const;

  // Per-phase bytes since the previous call; the running totals are kept.
  PhaseBytes take_phase_counters();

  const std::vector<TranscriptRecord>& transcript() const { return transcript_; }
  const std::vector<Bytes>& payloads() const { return payloads_; }

  // One JSON object per line: round, level, phase, sender, receiver, kind, bytes.
  void write_transcript(std::ostream& out) const;

 private:
  bool retain_payloads_;
  std::uint32_t round_ = 0;
  std::uint32_t level_ = 0;
  std::map<std::pair<Endpoint, Endpoint>, std::deque<Message>> queues_;
  std::uint64_t total_ = 0;
  PhaseBytes by_phase_{};
  PhaseBytes since_mark_{};
  std::map<std::pair<PartyId, PartyId>, std::uint64_t> by_pair_;
  std::vector<TranscriptRecord> transcript_;
  std::vector<Bytes> payloads_;
};

}  // namespace teeboost::fed

#endif  // TEEBOOST_FEDERATION_CHANNEL_H_
