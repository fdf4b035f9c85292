#include "teeboost/federation/channel.h"

#include <json.hpp>

#include "teeboost/common/errors.h"

namespace teeboost::fed {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::kSetup: return "setup";
    case Phase::kGradients: return "gradients";
    case Phase::kSplits: return "splits";
    case Phase::kDecision: return "decision";
    case Phase::kInference: return "inference";
  }
  return "unknown";
}

std::string_view kind_name(MessageKind k) {
  switch (k) {
    case MessageKind::kPaillierPublicKey: return "paillier_public_key";
    case MessageKind::kEncryptedGradients: return "encrypted_gradients";
    case MessageKind::kEncryptedBucketSums: return "encrypted_bucket_sums";
    case MessageKind::kSealedGradients: return "sealed_gradients";
    case MessageKind::kSealedBestScores: return "sealed_best_scores";
    case MessageKind::kSealedWinners: return "sealed_winners";
    case MessageKind::kMaskedGradients: return "masked_gradients";
    case MessageKind::kSealedBucketSums: return "sealed_bucket_sums";
    case MessageKind::kSplitIndices: return "split_indices";
    case MessageKind::kSplitResult: return "split_result";
    case MessageKind::kDirectionQuery: return "direction_query";
    case MessageKind::kDirectionReply: return "direction_reply";
  }
  return "unknown";
}

std::string to_string(const Endpoint& e) {
  return "P" + std::to_string(e.party) + (e.enclave ? ".enclave" : "");
}

Receipt Network::send(Message msg) {
  const std::uint64_t n = msg.payload.size();
  const auto phase = static_cast<std::size_t>(msg.phase);
  total_ += n;
  by_phase_[phase] += n;
  since_mark_[phase] += n;
  by_pair_[{msg.sender.party, msg.receiver.party}] += n;
  transcript_.push_back({round_, level_, msg.phase, msg.sender, msg.receiver, msg.kind, n});
  if (retain_payloads_) payloads_.push_back(msg.payload);
  Receipt r{transcript_.size() - 1, n};
  queues_[{msg.sender, msg.receiver}].push_back(std::move(msg));
  return r;
}

Message Network::receive(Endpoint from, Endpoint to, MessageKind expected) {
  auto it = queues_.find({from, to});
  if (it == queues_.end() || it->second.empty()) {
    throw ProtocolError("no message queued from " + to_string(from) + " to " + to_string(to));
  }
  Message msg = std::move(it->second.front());
  it->second.pop_front();
  if (msg.kind != expected) {
    throw ProtocolError("expected " + std::string(kind_name(expected)) + " from " +
                        to_string(from) + ", got " + std::string(kind_name(msg.kind)));
  }
  return msg;
}

std::size_t Network::pending() const {
  std::size_t n = 0;
  for (const auto& [_, q] : queues_) n += q.size();
  return n;
}

std::uint64_t Network::training_bytes() const {
  return total_ - by_phase_[static_cast<std::size_t>(Phase::kSetup)];
}

std::uint64_t Network::bytes(PartyId from, PartyId to) const {
  auto it = by_pair_.find({from, to});
  return it == by_pair_.end() ? 0 : it->second;
}

PhaseBytes Network::take_phase_counters() {
  PhaseBytes out = since_mark_;
  since_mark_ = {};
  return out;
}

void Network::write_transcript(std::ostream& out) const {
  for (const auto& r : transcript_) {
    nlohmann::json j = {{"round", r.round},
                        {"level", r.level},
                        {"phase", phase_name(r.phase)},
                        {"sender", to_string(r.sender)},
                        {"receiver", to_string(r.receiver)},
                        {"kind", kind_name(r.kind)},
                        {"bytes", r.bytes}};
    out << j.dump() << '\n';
  }
}

}  // namespace teeboost::fed
