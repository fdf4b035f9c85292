#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.h"
#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"
#include "teeboost/core/booster.h"
#include "teeboost/core/split.h"
#include "teeboost/protocols/session.h"

namespace teeboost::core {
namespace {

using proto::Session;

TEST(Hyperparams, Validation) {
  Hyperparams p;
  EXPECT_NO_THROW(p.validate());
  p.max_depth = 0;
  EXPECT_THROW(p.validate(), UsageError);
  p = {};
  p.subsample = 0.0;
  EXPECT_THROW(p.validate(), UsageError);
  p = {};
  p.lambda = -1.0;
  EXPECT_THROW(p.validate(), UsageError);
  p = {};
  p.bins = 1;
  EXPECT_THROW(p.validate(), UsageError);
}

TEST(Subsample, SeededFixedFractionAscending) {
  auto a = subsample_rows(100, 0.8, 7, 3);
  auto b = subsample_rows(100, 0.8, 7, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 80u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_NE(a, subsample_rows(100, 0.8, 7, 4));
  EXPECT_EQ(subsample_rows(10, 0.01, 1, 0).size(), 1u);
  EXPECT_EQ(subsample_rows(10, 1.0, 1, 0).size(), 10u);
}

TEST(Train, ZeroTreesPredictsBaseScore) {
  auto data = testing::synthetic(50, 1);
  auto opt = testing::options_for(fed::Mode::kPlaintext, 1);
  opt.params.n_trees = 0;
  Session s(data, opt);
  auto r = s.train();
  EXPECT_TRUE(r.model.trees.empty());
  for (double z : r.logits) EXPECT_EQ(z, r.model.base_score);
  EXPECT_EQ(r.model.base_score, 0.0);
}

TEST(Train, UnsplittableRootIsOneLeafWithLeafFormula) {
  std::vector<double> c = {2, 2, 2, 2};
  auto data = testing::make_dataset({{c}, {c}}, {1, 0, 1, 1});
  auto opt = testing::options_for(fed::Mode::kPlaintext, 1);
  opt.params.n_trees = 1;
  opt.params.subsample = 1.0;
  opt.params.learning_rate = 0.3;
  Session s(data, opt);
  auto r = s.train();
  ASSERT_EQ(r.model.trees.size(), 1u);
  ASSERT_EQ(r.model.trees[0].nodes.size(), 1u);
  // g = 0.5 - y per sample at logit 0, h = 0.25.
  double expected = -0.3 * (-1.0) / (1.0 + 1.0);
  EXPECT_DOUBLE_EQ(r.model.trees[0].nodes[0].weight, expected);
  for (double z : r.logits) EXPECT_DOUBLE_EQ(z, expected);
}

TEST(Train, EmptyDatasetIsUsageError) {
  struct NoSplits : SplitStrategy {
    void begin_tree(std::uint32_t, std::span<const FixedGradient>, std::span<const SampleId>) override {}
    std::vector<std::optional<SplitDecision>> split_level(std::uint32_t,
                                                          std::span<const LevelTask> t) override {
      return std::vector<std::optional<SplitDecision>>(t.size());
    }
    std::vector<bool> route(PartyId, std::uint64_t, std::span<const SampleId> rows) override {
      return std::vector<bool>(rows.size(), true);
    }
  } strategy;
  EXPECT_THROW(train({}, Hyperparams{}, strategy), UsageError);
  std::vector<std::uint8_t> labels = {1, 0};
  std::vector<double> margin = {0.0};
  EXPECT_THROW(train(labels, Hyperparams{}, strategy, margin), UsageError);
}

TEST(Train, SeparableDataReachesHighAccuracy) {
  Rng rng(42);
  const std::size_t n = 200;
  std::vector<double> a(n), b(n);
  std::vector<std::uint8_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = uniform01(rng);
    b[i] = uniform01(rng);
    y[i] = a[i] + b[i] > 1.0;
  }
  auto data = testing::make_dataset({{a}, {b}}, y);
  auto opt = testing::options_for(fed::Mode::kPlaintext, 3);
  Session s(data, opt);
  auto r = s.train();
  std::size_t correct = 0;
  for (std::size_t i = 0; i < n; ++i) correct += (r.logits[i] > 0) == (y[i] == 1);
  EXPECT_GE(static_cast<double>(correct) / n, 0.95);
  for (const auto& t : r.model.trees) {
    EXPECT_LE(t.depth(), opt.params.max_depth);
    for (const auto& node : t.nodes) EXPECT_TRUE(std::isfinite(node.weight));
  }
}

TEST(Train, LogitsAgreeWithLocalPrediction) {
  auto data = testing::synthetic(300, 9);
  Session s(data, testing::options_for(fed::Mode::kPlaintext, 9));
  auto r = s.train();
  auto records = s.records();
  for (SampleId i = 0; i < data.num_samples(); ++i) {
    EXPECT_DOUBLE_EQ(r.logits[i], predict_local(r.model, records, data, i));
  }
}

TEST(Train, DeterministicForFixedSeed) {
  auto data = testing::synthetic(400, 5);
  Session a(data, testing::options_for(fed::Mode::kPlaintext, 5));
  Session b(data, testing::options_for(fed::Mode::kPlaintext, 5));
  EXPECT_EQ(a.fingerprint(a.train().model), b.fingerprint(b.train().model));
  Session c(data, testing::options_for(fed::Mode::kPlaintext, 6));
  Session d(data, testing::options_for(fed::Mode::kPlaintext, 5));
  EXPECT_NE(c.fingerprint(c.train().model), d.fingerprint(d.train().model));
}

TEST(Train, EveryInternalNodeResolvesAtItsOwner) {
  auto data = testing::synthetic(300, 12, 6, 3, 3);
  Session s(data, testing::options_for(fed::Mode::kPlaintext, 12));
  auto r = s.train();
  for (const auto& t : r.model.trees) {
    for (const auto& node : t.nodes) {
      if (node.leaf) continue;
      ASSERT_LT(node.party, s.parties().size());
      EXPECT_NO_THROW(s.parties()[node.party].records().at(node.record_id));
    }
  }
}

}  // namespace
}  // namespace teeboost::core
