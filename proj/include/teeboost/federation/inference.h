#ifndef TEEBOOST_FEDERATION_INFERENCE_H_
#define TEEBOOST_FEDERATION_INFERENCE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/core/dataset.h"
#include "teeboost/core/tree.h"
#include "teeboost/federation/channel.h"
#include "teeboost/federation/party.h"

namespace teeboost::fed {

// DirectionQuery: u64 record id, u32 count, count x u32 row ids.
// DirectionReply: u32 count, ceil(count / 8) bytes of left-bits, LSB first.
Bytes encode_direction_query(std::uint64_t record_id, std::span<const SampleId> rows);
Bytes encode_direction_reply(const std::vector<bool>& left);
std::vector<bool> decode_direction_reply(ByteView payload, std::size_t expected);

// Asks `owner` which of `rows` go left at `record_id`, evaluating against
// `columns` (the owner's slice of whatever rows are being routed). The
// active party answers its own nodes locally without traffic. ProtocolError
// if the owner does not exist.
std::vector<bool> query_directions(Network& net, const std::vector<Party>& parties,
                                   PartyId owner, std::uint64_t record_id,
                                   std::span<const SampleId> rows,
                                   const core::FeatureMatrix& columns);

// Inference where each party keeps its own columns and split records; the
// active party walks the trees and asks owners for directions.
class FederatedPredictor {
 public:
  // `data` holds every party's slice of the rows to score; each party only
  // reads its own slice.
  FederatedPredictor(Network& net, const std::vector<Party>& parties,
                     const core::VerticalDataset& data)
      : net_(net), parties_(parties), data_(data) {}

  // Logits for `rows`, one batched query per internal node and tree.
  std::vector<double> predict(const core::BoostedModel& model, std::span<const SampleId> rows);
  double predict_one(const core::BoostedModel& model, SampleId row);

 private:
  Network& net_;
  const std::vector<Party>& parties_;
  const core::VerticalDataset& data_;
};

}  // namespace teeboost::fed

#endif  // TEEBOOST_FEDERATION_INFERENCE_H_
