#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fixtures.h"
#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"
#include "teeboost/core/buckets.h"
#include "teeboost/core/gradients.h"
#include "teeboost/core/split.h"
#include "teeboost/core/thresholds.h"
#include "teeboost/core/tree.h"
#include "teeboost/crypto/fixed_point.h"

namespace teeboost::core {
namespace {

using crypto::fixed_decode;

// Nearest-rank quantile computed the textbook way: the smallest value whose
// empirical CDF reaches q.
std::vector<double> nearest_rank_oracle(std::vector<double> column, std::size_t l) {
  std::sort(column.begin(), column.end());
  std::vector<double> out;
  for (std::size_t j = 1; j <= l; ++j) {
    double q = static_cast<double>(j) / static_cast<double>(l);
    for (std::size_t i = 0; i < column.size(); ++i) {
      if (static_cast<double>(i + 1) / static_cast<double>(column.size()) >= q - 1e-12) {
        if (out.empty() || column[i] > out.back()) out.push_back(column[i]);
        break;
      }
    }
  }
  return out;
}

TEST(Gradients, SigmoidAndLogisticDerivatives) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(2.0), 1.0 / (1.0 + std::exp(-2.0)), 1e-15);
  EXPECT_NEAR(sigmoid(-800.0), 0.0, 1e-300);
  EXPECT_DOUBLE_EQ(sigmoid(800.0), 1.0);

  std::vector<double> logits = {0.0, 0.0, 1.5};
  std::vector<std::uint8_t> labels = {1, 0, 1};
  auto g = compute_gradients(logits, labels);
  EXPECT_DOUBLE_EQ(g[0].g, -0.5);
  EXPECT_DOUBLE_EQ(g[1].g, 0.5);
  EXPECT_DOUBLE_EQ(g[0].h, 0.25);
  double p = 1.0 / (1.0 + std::exp(-1.5));
  EXPECT_NEAR(g[2].g, p - 1.0, 1e-15);
  EXPECT_NEAR(g[2].h, p * (1.0 - p), 1e-15);
}

TEST(Gradients, StayInLogisticRange) {
  Rng rng(3);
  std::vector<double> logits(500);
  std::vector<std::uint8_t> labels(500);
  for (std::size_t i = 0; i < logits.size(); ++i) {
    logits[i] = 20.0 * (uniform01(rng) - 0.5);
    labels[i] = uniform01(rng) < 0.5;
  }
  for (const auto& gp : compute_gradients(logits, labels)) {
    EXPECT_GE(gp.g, -1.0);
    EXPECT_LE(gp.g, 1.0);
    EXPECT_GE(gp.h, 0.0);
    EXPECT_LE(gp.h, 0.25);
  }
}

TEST(Gradients, LengthMismatchIsUsageError) {
  std::vector<double> logits = {0.0};
  std::vector<std::uint8_t> labels = {1, 0};
  EXPECT_THROW(compute_gradients(logits, labels), UsageError);
}

TEST(Thresholds, OneToHundredInFourBuckets) {
  std::vector<double> column(100);
  std::iota(column.begin(), column.end(), 1.0);
  EXPECT_EQ(nearest_rank_oracle(column, 4), (std::vector<double>{25, 50, 75, 100}));
  EXPECT_EQ(build_thresholds(column, 4).values, (std::vector<double>{25, 50, 75, 100}));
}

TEST(Thresholds, ConstantColumnCollapses) {
  std::vector<double> column = {5, 5, 5};
  auto t = build_thresholds(column, 4);
  EXPECT_EQ(t.values, (std::vector<double>{5}));
  EXPECT_FALSE(t.splittable());
}

TEST(Thresholds, PerValueWhenBucketsExceedDistinctValues) {
  std::vector<double> column = {20, 30, 15};
  EXPECT_EQ(build_thresholds(column, 3).values, (std::vector<double>{15, 20, 30}));
  EXPECT_EQ(build_thresholds(column, 50).values, (std::vector<double>{15, 20, 30}));
}

TEST(Thresholds, MatchNearestRankOracleOnRandomColumns) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + uniform_below(rng, 300);
    std::size_t l = 2 + uniform_below(rng, 40);
    std::vector<double> column(n);
    for (auto& x : column) x = std::round(100.0 * uniform01(rng)) / 4.0;
    auto t = build_thresholds(column, l);
    EXPECT_EQ(t.values, nearest_rank_oracle(column, l)) << "n=" << n << " l=" << l;
    EXPECT_TRUE(std::is_sorted(t.values.begin(), t.values.end()));
    EXPECT_EQ(std::adjacent_find(t.values.begin(), t.values.end()), t.values.end());
    EXPECT_EQ(t.values.back(), *std::max_element(column.begin(), column.end()));
  }
}

TEST(Thresholds, RejectsTooFewBuckets) {
  std::vector<double> column = {1, 2};
  EXPECT_THROW(build_thresholds(column, 1), UsageError);
  EXPECT_THROW(build_thresholds(std::span<const double>{}, 4), UsageError);
}

TEST(BucketAssign, InclusiveUpperEdges) {
  std::vector<double> t = {15, 20, 30};
  EXPECT_EQ(bucket_assign(15, t), 0u);
  EXPECT_EQ(bucket_assign(20, t), 1u);
  EXPECT_EQ(bucket_assign(30, t), 2u);
  EXPECT_EQ(bucket_assign(-1e9, t), 0u);
  EXPECT_EQ(bucket_assign(20.5, t), 2u);
  EXPECT_THROW(bucket_assign(30.5, t), ContractViolation);
}

TEST(Buckets, WorkedExampleSums) {
  auto ex = testing::three_samples();
  auto fg = testing::fixed(ex.gradients);
  const auto& column = ex.data.party(1).columns[0];
  auto t = build_thresholds(column, 3);
  std::vector<SampleId> all = {0, 1, 2};
  auto stats = bucket_aggregate(fg, column, t, all);
  ASSERT_EQ(stats.sums.size(), 3u);
  EXPECT_DOUBLE_EQ(fixed_decode(stats.sums.g[0]), fixed_decode(crypto::fixed_encode(0.2)));
  EXPECT_DOUBLE_EQ(fixed_decode(stats.sums.g[1]), -1.0);
  EXPECT_DOUBLE_EQ(fixed_decode(stats.sums.g[2]), fixed_decode(crypto::fixed_encode(0.6)));
  EXPECT_EQ(stats.members[0], (std::vector<SampleId>{2}));
  EXPECT_EQ(stats.members[1], (std::vector<SampleId>{0}));
  EXPECT_EQ(stats.members[2], (std::vector<SampleId>{1}));
}

TEST(Buckets, EmptyInstanceSetGivesZeroSums) {
  auto fg = testing::fixed(testing::random_gradients(5, 1));
  std::vector<std::uint32_t> bins = {0, 1, 2, 0, 1};
  auto stats = bucket_aggregate(fg, bins, 3, {});
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_EQ(stats.sums.g[v], 0u);
    EXPECT_EQ(stats.sums.h[v], 0u);
    EXPECT_TRUE(stats.members[v].empty());
  }
}

TEST(Buckets, SingleBucketHoldsNodeTotals) {
  auto fg = testing::fixed(testing::random_gradients(40, 2));
  std::vector<std::uint32_t> bins(40, 0);
  std::vector<SampleId> inst(40);
  std::iota(inst.begin(), inst.end(), 0);
  auto sums = bucket_sums(fg, bins, 1, inst);
  auto totals = node_totals(fg, inst);
  EXPECT_EQ(sums.g[0], totals.g);
  EXPECT_EQ(sums.h[0], totals.h);
}

TEST(Buckets, PartitionPropertyOnRandomNodes) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + uniform_below(rng, 200);
    std::vector<double> column(n);
    for (auto& x : column) x = std::floor(50.0 * uniform01(rng));
    auto t = build_thresholds(column, 2 + uniform_below(rng, 20));
    auto fg = testing::fixed(testing::random_gradients(n, trial));
    std::vector<SampleId> inst;
    for (SampleId i = 0; i < n; ++i) {
      if (uniform01(rng) < 0.6) inst.push_back(i);
    }
    auto stats = bucket_aggregate(fg, column, t, inst);
    crypto::RingElem g = 0, h = 0;
    std::vector<SampleId> seen;
    for (std::size_t v = 0; v < stats.sums.size(); ++v) {
      g += stats.sums.g[v];
      h += stats.sums.h[v];
      seen.insert(seen.end(), stats.members[v].begin(), stats.members[v].end());
    }
    auto totals = node_totals(fg, inst);
    EXPECT_EQ(g, totals.g);
    EXPECT_EQ(h, totals.h);
    std::sort(seen.begin(), seen.end());
    EXPECT_EQ(seen, inst);
  }
}

TEST(Buckets, PerValueThresholdsGiveOneSamplePerBucket) {
  Rng rng(8);
  std::vector<double> column(80);
  for (auto& x : column) x = uniform01(rng);
  auto t = build_thresholds(column, 80);
  auto fg = testing::fixed(testing::random_gradients(80, 8));
  std::vector<SampleId> inst(80);
  std::iota(inst.begin(), inst.end(), 0);
  auto stats = bucket_aggregate(fg, column, t, inst);
  ASSERT_EQ(stats.members.size(), 80u);
  for (const auto& m : stats.members) EXPECT_EQ(m.size(), 1u);
}

TEST(SplitScore, KnownValues) {
  EXPECT_EQ(split_score(0, 0, 0, 0, 1), 0.0);
  double expected = 0.2 * 0.2 / 1.1 + 0.4 * 0.4 / 1.4 + 0.2 * 0.2 / 1.5;
  EXPECT_NEAR(split_score(0.2, 0.1, -0.2, 0.5, 1.0), expected, 1e-15);
  EXPECT_NEAR(split_score(0.2, 0.1, -0.2, 0.5, 1.0), 0.1773, 5e-5);
}

TEST(SplitScore, ZeroDenominatorIsArithmeticError) {
  EXPECT_THROW(split_score(0.1, 0.0, 0.1, 0.0, 0.0), ArithmeticError);
}

TEST(LeafWeight, KnownValues) {
  EXPECT_EQ(leaf_weight(0, 5, 1, 0.3), 0.0);
  EXPECT_EQ(leaf_weight(1, 0, 1, 1), -1.0);
  EXPECT_NEAR(leaf_weight(-0.5, 0.25, 1, 0.3), 0.12, 1e-15);
}

// Brute force over every (feature, threshold) of one party: same sums, same
// decode points, separate loop.
LocalBest brute_force(const std::vector<BucketSums>& features, GradientTotals totals,
                      double lambda, bool drop_constant) {
  LocalBest best;
  const double g = fixed_decode(totals.g);
  const double h = fixed_decode(totals.h);
  for (std::size_t k = 0; k < features.size(); ++k) {
    if (features[k].size() < 2) continue;
    for (std::size_t v = 0; v < features[k].size(); ++v) {
      crypto::RingElem lg = 0, lh = 0;
      for (std::size_t u = 0; u <= v; ++u) {
        lg += features[k].g[u];
        lh += features[k].h[u];
      }
      double s = split_score(fixed_decode(lg), fixed_decode(lh), g, h, lambda);
      if (drop_constant) s -= g * g / (h + lambda);
      if (!best.found || s > best.score) {
        best = {true, s, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(v)};
      }
    }
  }
  return best;
}

TEST(ScanParty, WorkedExampleMatchesExhaustiveSearch) {
  auto ex = testing::three_samples();
  auto fg = testing::fixed(ex.gradients);
  auto binning = FeatureBinning::build(ex.data.party(1), 3);
  std::vector<SampleId> all = {0, 1, 2};
  std::vector<BucketSums> sums = {bucket_sums(fg, binning.bins[0], 3, all)};
  auto totals = node_totals(fg, all);
  auto best = scan_party(sums, totals, 1.0);
  auto oracle = brute_force(sums, totals, 1.0, false);
  ASSERT_TRUE(best.found);
  EXPECT_EQ(best.feature, oracle.feature);
  EXPECT_EQ(best.threshold, oracle.threshold);
  EXPECT_EQ(best.score, oracle.score);
}

TEST(ScanParty, MatchesBruteForceAndIgnoresConstantTerm) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 2 + uniform_below(rng, 120);
    auto fg = testing::fixed(testing::random_gradients(n, 100 + trial));
    std::vector<SampleId> inst(n);
    std::iota(inst.begin(), inst.end(), 0);
    std::vector<BucketSums> sums;
    std::size_t d = 1 + uniform_below(rng, 4);
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t l = 1 + uniform_below(rng, 10);
      std::vector<std::uint32_t> bins(n);
      for (auto& b : bins) b = static_cast<std::uint32_t>(uniform_below(rng, l));
      sums.push_back(bucket_sums(fg, bins, l, inst));
    }
    auto totals = node_totals(fg, inst);
    auto best = scan_party(sums, totals, 1.0);
    auto oracle = brute_force(sums, totals, 1.0, false);
    auto reduced = brute_force(sums, totals, 1.0, true);
    ASSERT_EQ(best.found, oracle.found);
    if (!best.found) continue;
    EXPECT_EQ(best.score, oracle.score);
    EXPECT_EQ(std::pair(best.feature, best.threshold), std::pair(oracle.feature, oracle.threshold));
    EXPECT_EQ(std::pair(best.feature, best.threshold),
              std::pair(reduced.feature, reduced.threshold));
  }
}

TEST(ScanParty, PrefersInformativeOverConstantFeature) {
  std::vector<double> constant = {3, 3, 3, 3};
  std::vector<double> informative = {1, 2, 3, 4};
  auto data = testing::make_dataset({{constant, informative}}, {1, 1, 0, 0});
  auto binning = FeatureBinning::build(data.party(0), 4);
  std::vector<GradientPair> g = {{-0.5, 0.25}, {-0.5, 0.25}, {0.5, 0.25}, {0.5, 0.25}};
  auto fg = testing::fixed(g);
  std::vector<SampleId> all = {0, 1, 2, 3};
  std::vector<FeatureBinning> parties = {binning};
  auto d = find_best_split_oracle(all, parties, fg, 1.0);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->feature, 1u);
  EXPECT_EQ(d->threshold, 1u);
  EXPECT_EQ(d->left, (std::vector<SampleId>{0, 1}));
}

TEST(ScanParty, TiesGoToLowestPartyFeatureThreshold) {
  std::vector<double> column = {1, 2, 3, 4};
  auto data = testing::make_dataset({{column, column}, {column}}, {1, 1, 0, 0});
  std::vector<FeatureBinning> parties = {FeatureBinning::build(data.party(0), 4),
                                         FeatureBinning::build(data.party(1), 4)};
  std::vector<GradientPair> g = {{-0.5, 0.25}, {-0.5, 0.25}, {0.5, 0.25}, {0.5, 0.25}};
  auto fg = testing::fixed(g);
  std::vector<SampleId> all = {0, 1, 2, 3};
  auto d = find_best_split_oracle(all, parties, fg, 1.0);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->party, 0u);
  EXPECT_EQ(d->feature, 0u);

  GlobalBest best;
  LocalBest a{true, 1.0, 3, 1};
  LocalBest b{true, 1.0, 0, 0};
  best.offer(0, a);
  best.offer(1, b);
  EXPECT_EQ(best.party, 0u);
  EXPECT_EQ(best.local.feature, 3u);
}

TEST(ScanParty, NodeWithOneSampleOrNoSplittableFeatureHasNoSplit) {
  std::vector<double> constant = {3, 3};
  auto data = testing::make_dataset({{constant}}, {1, 0});
  std::vector<FeatureBinning> parties = {FeatureBinning::build(data.party(0), 4)};
  auto fg = testing::fixed(testing::random_gradients(2, 4));
  std::vector<SampleId> two = {0, 1};
  std::vector<SampleId> one = {0};
  EXPECT_FALSE(find_best_split_oracle(two, parties, fg, 1.0).has_value());
  EXPECT_FALSE(find_best_split_oracle(one, parties, fg, 1.0).has_value());
}

TEST(Partition, WorkedExampleAndEdgeCases) {
  std::vector<std::uint32_t> bins = {1, 2, 0};  // x = {20, 30, 15}
  std::vector<SampleId> all = {0, 1, 2};
  auto [l, r] = partition_by_bucket(bins, 1, all);
  EXPECT_EQ(l, (std::vector<SampleId>{0, 2}));
  EXPECT_EQ(r, (std::vector<SampleId>{1}));
  auto [l2, r2] = partition_by_bucket(bins, 2, all);
  EXPECT_EQ(l2.size(), 3u);
  EXPECT_TRUE(r2.empty());
}

TEST(Tree, RecordTableAndFingerprint) {
  SplitRecordTable t;
  EXPECT_EQ(t.add({0, 1, 2.5}), 0u);
  EXPECT_EQ(t.add({1, 0, -1.0}), 1u);
  EXPECT_EQ(t.at(1).feature, 1u);
  EXPECT_THROW(t.at(2), UsageError);
  EXPECT_TRUE(goes_left(2.5, t.at(0)));
  EXPECT_FALSE(goes_left(2.6, t.at(0)));

  BoostedModel m;
  RegressionTree tree;
  tree.nodes.push_back({true, 0, 0, -1, -1, 0.25});
  m.trees.push_back(tree);
  std::vector<SplitRecordTable> records = {t};
  auto a = model_fingerprint(m, records);
  m.trees[0].nodes[0].weight = std::nextafter(0.25, 1.0);
  EXPECT_NE(a, model_fingerprint(m, records));
  EXPECT_EQ(a.size(), 64u);
}

}  // namespace
}  // namespace teeboost::core
