#include "teeboost/protocols/wire.h"

#include <algorithm>
#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::proto {

void write_node_batch(ByteWriter& w, std::span<const core::LevelTask> tasks) {
  w.u32(static_cast<std::uint32_t>(tasks.size()));
  for (const auto& t : tasks) {
    w.u32(static_cast<std::uint32_t>(t.instances.size()));
    for (SampleId i : t.instances) w.u32(i);
  }
}

NodeSets read_node_batch(ByteReader& r) {
  NodeSets out(r.u32());
  for (auto& node : out) {
    std::uint32_t n = r.u32();
    if (static_cast<std::size_t>(n) * 4 > r.remaining()) {
      throw ProtocolError("node batch claims " + std::to_string(n) + " ids past the payload end");
    }
    node.resize(n);
    for (auto& i : node) i = r.u32();
    if (!std::is_sorted(node.begin(), node.end())) {
      throw ProtocolError("node batch ids are not ascending");
    }
  }
  return out;
}

std::size_t node_batch_bytes(std::span<const core::LevelTask> tasks) {
  std::size_t n = 4;
  for (const auto& t : tasks) n += 4 + 4 * t.instances.size();
  return n;
}

Bytes encode_split_indices(const SplitIndices& s) {
  ByteWriter w(12);
  w.u32(s.node);
  w.u32(s.feature);
  w.u32(s.threshold);
  return w.take();
}

SplitIndices decode_split_indices(ByteView payload) {
  ByteReader r(payload);
  SplitIndices s;
  s.node = r.u32();
  s.feature = r.u32();
  s.threshold = r.u32();
  r.expect_done();
  return s;
}

Bytes encode_split_result(const SplitResult& s) {
  ByteWriter w(12 + 4 * s.left.size());
  w.u64(s.record_id);
  w.u32(static_cast<std::uint32_t>(s.left.size()));
  for (SampleId i : s.left) w.u32(i);
  return w.take();
}

SplitResult decode_split_result(ByteView payload) {
  ByteReader r(payload);
  SplitResult s;
  s.record_id = r.u64();
  s.left.resize(r.u32());
  if (s.left.size() * 4 != r.remaining()) throw ProtocolError("split result size mismatch");
  for (auto& i : s.left) i = r.u32();
  r.expect_done();
  return s;
}

void write_scores(ByteWriter& w, std::span<const ScoreEntry> scores) {
  w.u32(static_cast<std::uint32_t>(scores.size()));
  for (const auto& s : scores) {
    w.u8(s.found ? 1 : 0);
    w.f64(s.score);
  }
}

std::vector<ScoreEntry> read_scores(ByteReader& r) {
  std::vector<ScoreEntry> out(r.u32());
  for (auto& s : out) {
    s.found = r.u8() != 0;
    s.score = r.f64();
  }
  return out;
}

void write_gradients(ByteWriter& w, std::span<const core::LevelTask> tasks,
                     std::span<const core::FixedGradient> gradients) {
  for (const auto& t : tasks) {
    for (SampleId i : t.instances) {
      w.u64(gradients[i].g);
      w.u64(gradients[i].h);
    }
  }
}

}  // namespace teeboost::proto
