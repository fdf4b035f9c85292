#ifndef TEEBOOST_PROTOCOLS_WIRE_H_
#define TEEBOOST_PROTOCOLS_WIRE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "teeboost/common/bytes.h"
#include "teeboost/core/booster.h"
#include "teeboost/core/buckets.h"

namespace teeboost::proto {

using core::SampleId;
using NodeSets = std::vector<std::vector<SampleId>>;

// u32 node count, then per node u32 size and the ascending sample ids.
void write_node_batch(ByteWriter& w, std::span<const core::LevelTask> tasks);
NodeSets read_node_batch(ByteReader& r);
std::size_t node_batch_bytes(std::span<const core::LevelTask> tasks);

// Winner notification: node position within the level batch, feature index,
// threshold index. 12 bytes.
struct SplitIndices {
  std::uint32_t node = 0;
  std::uint32_t feature = 0;
  std::uint32_t threshold = 0;
};
Bytes encode_split_indices(const SplitIndices& s);
SplitIndices decode_split_indices(ByteView payload);

// Owner's answer: u64 record id, u32 |I_L|, the I_L ids.
struct SplitResult {
  std::uint64_t record_id = 0;
  std::vector<SampleId> left;
};
Bytes encode_split_result(const SplitResult& s);
SplitResult decode_split_result(ByteView payload);

// Per node found flag and score. Used for the N-TEE best-score message.
struct ScoreEntry {
  bool found = false;
  double score = 0.0;
};
void write_scores(ByteWriter& w, std::span<const ScoreEntry> scores);
std::vector<ScoreEntry> read_scores(ByteReader& r);

// Plain gradient records (u64 g, u64 h) for every id of every node in order.
void write_gradients(ByteWriter& w, std::span<const core::LevelTask> tasks,
                     std::span<const core::FixedGradient> gradients);

}  // namespace teeboost::proto

#endif  // TEEBOOST_PROTOCOLS_WIRE_H_
