#include "teeboost/federation/inference.h"

#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::fed {

Bytes encode_direction_query(std::uint64_t record_id, std::span<const SampleId> rows) {
  ByteWriter w(12 + 4 * rows.size());
  w.u64(record_id);
  w.u32(static_cast<std::uint32_t>(rows.size()));
  for (SampleId i : rows) w.u32(i);
  return w.take();
}

Bytes encode_direction_reply(const std::vector<bool>& left) {
  ByteWriter w(4 + (left.size() + 7) / 8);
  w.u32(static_cast<std::uint32_t>(left.size()));
  std::uint8_t acc = 0;
  for (std::size_t j = 0; j < left.size(); ++j) {
    if (left[j]) acc |= static_cast<std::uint8_t>(1u << (j % 8));
    if (j % 8 == 7) {
      w.u8(acc);
      acc = 0;
    }
  }
  if (left.size() % 8 != 0) w.u8(acc);
  return w.take();
}

std::vector<bool> decode_direction_reply(ByteView payload, std::size_t expected) {
  ByteReader r(payload);
  std::uint32_t n = r.u32();
  if (n != expected) {
    throw ProtocolError("direction reply covers " + std::to_string(n) + " rows, expected " +
                        std::to_string(expected));
  }
  ByteView bits = r.raw((n + 7) / 8);
  r.expect_done();
  std::vector<bool> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = (bits[j / 8] >> (j % 8)) & 1u;
  return out;
}

std::vector<bool> query_directions(Network& net, const std::vector<Party>& parties,
                                   PartyId owner, std::uint64_t record_id,
                                   std::span<const SampleId> rows,
                                   const core::FeatureMatrix& columns) {
  if (owner >= parties.size()) {
    throw ProtocolError("node owner P" + std::to_string(owner) + " is not reachable");
  }
  const Party& p = parties[owner];
  if (p.is_active()) return p.directions(record_id, rows, columns);

  net.send({Phase::kInference, host(kActiveParty), host(owner), MessageKind::kDirectionQuery,
            encode_direction_query(record_id, rows)});
  Message q = net.receive(host(kActiveParty), host(owner), MessageKind::kDirectionQuery);
  ByteReader r(q.payload);
  std::uint64_t rec = r.u64();
  std::vector<SampleId> asked(r.u32());
  for (auto& i : asked) i = r.u32();
  r.expect_done();
  net.send({Phase::kInference, host(owner), host(kActiveParty), MessageKind::kDirectionReply,
            encode_direction_reply(p.directions(rec, asked, columns))});
  Message a = net.receive(host(owner), host(kActiveParty), MessageKind::kDirectionReply);
  return decode_direction_reply(a.payload, rows.size());
}

std::vector<double> FederatedPredictor::predict(const core::BoostedModel& model,
                                                std::span<const SampleId> rows) {
  std::vector<double> out(rows.size(), model.base_score);
  struct Pending {
    std::int32_t node;
    std::vector<std::size_t> slots;  // positions in `rows`
  };
  for (const auto& tree : model.trees) {
    std::vector<Pending> frontier;
    if (!rows.empty()) {
      Pending all{0, {}};
      all.slots.resize(rows.size());
      for (std::size_t j = 0; j < rows.size(); ++j) all.slots[j] = j;
      frontier.push_back(std::move(all));
    }
    while (!frontier.empty()) {
      std::vector<Pending> next;
      for (auto& f : frontier) {
        const auto& node = tree.nodes.at(f.node);
        if (node.leaf) {
          for (std::size_t s : f.slots) out[s] += node.weight;
          continue;
        }
        if (node.party >= parties_.size()) {
          throw ProtocolError("node owner P" + std::to_string(node.party) + " is not reachable");
        }
        std::vector<SampleId> ids(f.slots.size());
        for (std::size_t j = 0; j < ids.size(); ++j) ids[j] = rows[f.slots[j]];
        auto dirs = query_directions(net_, parties_, node.party, node.record_id, ids,
                                     data_.party(node.party));
        Pending l{node.left, {}}, r{node.right, {}};
        for (std::size_t j = 0; j < ids.size(); ++j) (dirs[j] ? l : r).slots.push_back(f.slots[j]);
        if (!l.slots.empty()) next.push_back(std::move(l));
        if (!r.slots.empty()) next.push_back(std::move(r));
      }
      frontier = std::move(next);
    }
  }
  return out;
}

double FederatedPredictor::predict_one(const core::BoostedModel& model, SampleId row) {
  SampleId one[1] = {row};
  return predict(model, one).front();
}

}  // namespace teeboost::fed
