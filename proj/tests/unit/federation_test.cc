#include <gtest/gtest.h>

#include <numeric>

#include "fixtures.h"
#include "teeboost/common/errors.h"
#include "teeboost/core/tree.h"
#include "teeboost/federation/channel.h"
#include "teeboost/federation/enclave.h"
#include "teeboost/federation/inference.h"
#include "teeboost/federation/party.h"
#include "teeboost/federation/topology.h"
#include "teeboost/protocols/ntee.h"
#include "teeboost/protocols/session.h"

namespace teeboost::fed {
namespace {

Message msg(Phase phase, PartyId from, PartyId to, MessageKind kind, std::size_t size,
            std::uint8_t fill = 0) {
  return {phase, host(from), host(to), kind, Bytes(size, fill)};
}

TEST(Network, CountsExactBytes) {
  Network net;
  auto r = net.send(msg(Phase::kGradients, 0, 1, MessageKind::kMaskedGradients, 512));
  EXPECT_EQ(r.bytes, 512u);
  EXPECT_EQ(net.total_bytes(), 512u);
  EXPECT_EQ(net.bytes(Phase::kGradients), 512u);
  EXPECT_EQ(net.bytes(0, 1), 512u);
  EXPECT_EQ(net.bytes(1, 0), 0u);
}

TEST(Network, FifoPerPair) {
  Network net;
  for (std::uint8_t i = 0; i < 3; ++i) {
    net.send(msg(Phase::kSplits, 1, 0, MessageKind::kSplitResult, 4, i));
  }
  EXPECT_EQ(net.pending(), 3u);
  for (std::uint8_t i = 0; i < 3; ++i) {
    EXPECT_EQ(net.receive(host(1), host(0), MessageKind::kSplitResult).payload[0], i);
  }
  EXPECT_THROW(net.receive(host(1), host(0), MessageKind::kSplitResult), ProtocolError);
}

TEST(Network, WrongKindIsProtocolError) {
  Network net;
  net.send(msg(Phase::kSplits, 1, 0, MessageKind::kSplitResult, 4));
  EXPECT_THROW(net.receive(host(1), host(0), MessageKind::kSplitIndices), ProtocolError);
}

TEST(Network, PhaseCountersSumToTotal) {
  Network net;
  std::uint64_t sum = 0;
  PhaseBytes acc{};
  for (std::uint32_t level = 0; level < 4; ++level) {
    net.set_context(0, level);
    net.send(msg(Phase::kGradients, 0, 1, MessageKind::kMaskedGradients, 100 + level));
    net.send(msg(Phase::kSplits, 1, 0, MessageKind::kSealedBucketSums, 10 * level));
    net.send(msg(Phase::kDecision, 0, 1, MessageKind::kSplitIndices, 12));
    auto c = net.take_phase_counters();
    for (std::size_t p = 0; p < kNumPhases; ++p) {
      acc[p] += c[p];
      sum += c[p];
    }
  }
  EXPECT_EQ(sum, net.total_bytes());
  for (std::size_t p = 0; p < kNumPhases; ++p) EXPECT_EQ(acc[p], net.bytes(static_cast<Phase>(p)));
  std::uint64_t from_log = 0;
  for (const auto& t : net.transcript()) from_log += t.bytes;
  EXPECT_EQ(from_log, net.total_bytes());
  EXPECT_EQ(net.transcript().back().level, 3u);
}

TEST(Network, TrainingBytesExcludeSetup) {
  Network net;
  net.send(msg(Phase::kSetup, 0, 1, MessageKind::kPaillierPublicKey, 260));
  net.send(msg(Phase::kGradients, 0, 1, MessageKind::kEncryptedGradients, 40));
  EXPECT_EQ(net.training_bytes(), 40u);
  EXPECT_EQ(net.total_bytes(), 300u);
}

TEST(Party, RolesAndLabels) {
  auto ex = testing::three_samples();
  Party active(0, ex.data.party(0), 3, ex.data.labels());
  Party passive(1, ex.data.party(1), 3);
  EXPECT_TRUE(active.is_active());
  EXPECT_FALSE(passive.is_active());
  EXPECT_EQ(active.labels().size(), 3u);
  EXPECT_THROW(passive.labels(), UsageError);
  EXPECT_THROW(Party(1, ex.data.party(1), 3, ex.data.labels()), UsageError);
  EXPECT_THROW(Party(0, ex.data.party(0), 3), UsageError);
}

TEST(Party, PartitionWorkedExample) {
  auto ex = testing::three_samples();
  Party passive(1, ex.data.party(1), 3);
  auto rec = passive.record_split(0, 1);  // covers {15, 20}
  std::vector<SampleId> all = {0, 1, 2};
  auto [l, r] = passive.partition_node(rec, all);
  EXPECT_EQ(l, (std::vector<SampleId>{0, 2}));
  EXPECT_EQ(r, (std::vector<SampleId>{1}));
  auto last = passive.record_split(0, 2);
  EXPECT_TRUE(passive.partition_node(last, all).second.empty());
  EXPECT_THROW(passive.partition_node(99, all), UsageError);
  EXPECT_THROW(passive.record_split(0, 3), ProtocolError);
  EXPECT_THROW(passive.record_split(1, 0), ProtocolError);
  EXPECT_EQ(passive.records().at(rec).threshold_value, 20.0);
  EXPECT_NE(rec, last);
}

TEST(Party, PartitionIsDisjointCover) {
  auto data = testing::synthetic(200, 3);
  Party p(1, data.party(1), 16);
  std::vector<SampleId> inst;
  for (SampleId i = 0; i < 200; i += 3) inst.push_back(i);
  for (std::uint32_t k = 0; k < p.binning().num_features(); ++k) {
    auto rec = p.record_split(k, 4);
    auto [l, r] = p.partition_node(rec, inst);
    std::vector<SampleId> merged;
    std::merge(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(merged));
    EXPECT_EQ(merged, inst);
  }
}

std::vector<Party> parties_of(const core::VerticalDataset& data, std::size_t bins = 8) {
  std::vector<Party> out;
  for (PartyId p = 0; p < data.num_parties(); ++p) {
    if (p == 0) {
      out.emplace_back(p, data.party(p), bins, data.labels());
    } else {
      out.emplace_back(p, data.party(p), bins);
    }
  }
  return out;
}

void give_enclave(Party& p, std::unique_ptr<EnclaveProgram> program) {
  p.install_enclave(std::make_unique<EnclaveHost>(std::move(program), 0));
}

TEST(Topology, SecureBoostKeyPlacement) {
  auto data = testing::synthetic(20, 1, 6, 2, 3);
  auto parties = parties_of(data);
  Network net;
  crypto::PaillierRandom rng(1);
  establish_channels(parties, Mode::kSecureBoost, net, {512}, rng);
  EXPECT_TRUE(parties[0].keys().paillier_secret);
  for (PartyId p = 1; p < parties.size(); ++p) {
    EXPECT_FALSE(parties[p].keys().paillier_secret);
    ASSERT_TRUE(parties[p].keys().paillier_public);
    EXPECT_EQ(*parties[p].keys().paillier_public, parties[0].keys().paillier_secret->public_key());
    EXPECT_FALSE(parties[p].keys().symmetric);
  }
  EXPECT_EQ(net.bytes(Phase::kSetup), 2u * (4 + 64));
}

TEST(Topology, OneTeeKeyPlacement) {
  auto data = testing::synthetic(20, 1, 6, 2, 3);
  proto::Session s(data, testing::options_for(Mode::kOneTee, 1));
  const auto& parties = s.parties();
  EXPECT_FALSE(parties[0].keys().symmetric);
  EXPECT_FALSE(parties[0].keys().paillier_secret);
  ASSERT_NE(parties[0].enclave(), nullptr);
  EXPECT_TRUE(parties[0].enclave()->has_channel_key());
  for (PartyId p = 1; p < parties.size(); ++p) {
    EXPECT_TRUE(parties[p].keys().symmetric);
    EXPECT_EQ(parties[p].keys().symmetric, parties[1].keys().symmetric);
    EXPECT_FALSE(parties[p].keys().paillier_public);
  }
  EXPECT_EQ(s.network().total_bytes(), 0u);
}

TEST(Topology, NTeeKeysStayInsideEnclaves) {
  auto data = testing::synthetic(20, 1, 6, 2, 3);
  proto::Session s(data, testing::options_for(Mode::kNTee, 1));
  for (const auto& p : s.parties()) {
    ASSERT_NE(p.enclave(), nullptr);
    EXPECT_TRUE(p.enclave()->has_channel_key());
    EXPECT_FALSE(p.keys().symmetric);
    EXPECT_FALSE(p.keys().paillier_public);
    EXPECT_FALSE(p.keys().paillier_secret);
  }
}

TEST(Topology, NTeeWithoutPassiveEnclaveIsConfigError) {
  auto data = testing::synthetic(20, 1);
  auto opt = testing::options_for(Mode::kNTee, 1);
  opt.enclaves = std::vector<bool>{true, false};
  EXPECT_THROW(proto::Session(data, opt), ConfigError);
  opt.mode = Mode::kOneTee;
  opt.enclaves = std::vector<bool>{false, true};
  EXPECT_THROW(proto::Session(data, opt), ConfigError);
}

TEST(Topology, AttestationChecksIdentity) {
  auto data = testing::synthetic(20, 1);
  auto parties = parties_of(data);
  give_enclave(parties[0], std::make_unique<proto::NTeeProgram>(0));
  struct Impostor : EnclaveProgram {
    std::string identity() const override { return "something.else"; }
    Bytes invoke(std::uint32_t, ByteView) override { return {}; }
  };
  give_enclave(parties[1], std::make_unique<Impostor>());
  Network net;
  crypto::PaillierRandom rng(1);
  EXPECT_THROW(establish_channels(parties, Mode::kNTee, net, {}, rng), ConfigError);
}

TEST(Topology, ParseMode) {
  EXPECT_EQ(parse_mode("n_tee"), Mode::kNTee);
  EXPECT_EQ(parse_mode("onetee"), Mode::kOneTee);
  EXPECT_EQ(parse_mode("secureboost"), Mode::kSecureBoost);
  EXPECT_THROW(parse_mode("two_tee"), UsageError);
}

TEST(Enclave, PagedStoreRestoresRecords) {
  Bytes plain(24 * 100);
  std::iota(plain.begin(), plain.end(), 0);
  PagedStore store(plain, 24 * 7, 24);
  EXPECT_EQ(store.num_pages(), 15u);
  Bytes back;
  for (std::size_t p = 0; p < store.num_pages(); ++p) {
    auto page = store.load(p);
    EXPECT_EQ(page.size() % 24, 0u);
    back.insert(back.end(), page.begin(), page.end());
  }
  EXPECT_EQ(back, plain);
  EXPECT_EQ(store.page_loads(), 15u);
}

TEST(Enclave, HostSeesOnlyBytes) {
  struct Echo : EnclaveProgram {
    std::string identity() const override { return "echo"; }
    Bytes invoke(std::uint32_t, ByteView in) override { return Bytes(in.begin(), in.end()); }
  };
  EnclaveHost host(std::make_unique<Echo>(), 0);
  Bytes in = {1, 2, 3};
  EXPECT_EQ(host.ecall(1, in), in);
  EXPECT_EQ(host.stats().ecalls, 1u);
  EXPECT_EQ(host.stats().bytes_in, 3u);
  EXPECT_THROW(host.provision_verifier("other"), ConfigError);
}

TEST(Inference, DirectionMessagesRoundTrip) {
  std::vector<bool> left = {true, false, false, true, true, false, true, false, true};
  Bytes reply = encode_direction_reply(left);
  EXPECT_EQ(reply.size(), 4u + 2u);
  EXPECT_EQ(decode_direction_reply(reply, left.size()), left);
  EXPECT_THROW(decode_direction_reply(reply, 3), ProtocolError);
  std::vector<SampleId> rows = {4, 9};
  EXPECT_EQ(encode_direction_query(7, rows).size(), 8u + 4 + 8);
}

TEST(Inference, DepthZeroModelSumsLeafWeights) {
  auto data = testing::synthetic(30, 2);
  auto parties = parties_of(data);
  Network net;
  core::BoostedModel model;
  model.base_score = 0.5;
  for (double w : {0.1, -0.25, 0.4}) {
    core::RegressionTree t;
    t.nodes.push_back({true, 0, 0, -1, -1, w});
    model.trees.push_back(t);
  }
  FederatedPredictor fp(net, parties, data);
  EXPECT_DOUBLE_EQ(fp.predict_one(model, 3), 0.5 + 0.1 - 0.25 + 0.4);
  EXPECT_EQ(net.total_bytes(), 0u);
}

TEST(Inference, FederatedMatchesLocalAndLeaksOnlyDirections) {
  auto train = testing::synthetic(400, 21, 6, 2, 3);
  auto held = testing::synthetic(100, 22, 6, 2, 3);
  proto::Session s(train, testing::options_for(Mode::kPlaintext, 21));
  auto model = s.train().model;

  Network net;
  FederatedPredictor fp(net, s.parties(), held);
  std::vector<SampleId> rows(held.num_samples());
  std::iota(rows.begin(), rows.end(), 0);
  auto fed = fp.predict(model, rows);
  auto records = s.records();
  for (SampleId i : rows) EXPECT_EQ(fed[i], core::predict_local(model, records, held, i));
  for (SampleId i = 0; i < 10; ++i) EXPECT_EQ(fp.predict_one(model, i), fed[i]);

  ASSERT_FALSE(net.transcript().empty());
  for (const auto& t : net.transcript()) {
    EXPECT_EQ(t.phase, Phase::kInference);
    bool query = t.kind == MessageKind::kDirectionQuery && t.sender == host(0);
    bool reply = t.kind == MessageKind::kDirectionReply && t.receiver == host(0);
    EXPECT_TRUE(query || reply);
  }
}

TEST(Inference, UnknownOwnerIsProtocolError) {
  auto data = testing::synthetic(30, 2);
  auto parties = parties_of(data);
  Network net;
  std::vector<SampleId> rows = {0};
  EXPECT_THROW(query_directions(net, parties, 5, 0, rows, data.party(1)), ProtocolError);
}

}  // namespace
}  // namespace teeboost::fed
