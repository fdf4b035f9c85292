#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.h"
#include "teeboost/bench/config.h"
#include "teeboost/bench/csv.h"
#include "teeboost/bench/experiment.h"
#include "teeboost/bench/report.h"
#include "teeboost/bench/synth.h"
#include "teeboost/common/errors.h"
#include "teeboost/protocols/session.h"

namespace teeboost::bench {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("teeboost_bench_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Csv, RoundTripsThreeRows) {
  auto dir = scratch("csv");
  auto data = testing::make_dataset({{{1.5, -2.0, 3.25}}, {{0.1, 1e-7, 123456.789}}}, {1, 0, 1});
  ColumnLayout layout{"label", {{"p0_0"}, {"p1_0"}}};
  save_csv_vertical((dir / "a.csv").string(), data, layout);
  auto back = load_csv_vertical((dir / "a.csv").string(), layout);
  ASSERT_EQ(back.num_samples(), 3u);
  EXPECT_EQ(back.party(0).columns, data.party(0).columns);
  EXPECT_EQ(back.party(1).columns, data.party(1).columns);
  EXPECT_TRUE(std::equal(back.labels().begin(), back.labels().end(), data.labels().begin()));
  save_csv_vertical((dir / "b.csv").string(), back, layout);
  EXPECT_EQ(read_lines(dir / "a.csv"), read_lines(dir / "b.csv"));
}

TEST(Csv, ImputesMedianForMissingCells) {
  auto dir = scratch("impute");
  write_file(dir / "d.csv",
             "id,SeriousDlqin2yrs,age,MonthlyIncome\n"
             "1,0,30,1000\n2,1,40,\n3,0,50,3000\n4,0,60,NA\n5,1,70,8000\n");
  ColumnLayout layout{"SeriousDlqin2yrs", {{"age"}, {"MonthlyIncome"}}};
  LoadStats stats;
  auto d = load_csv_vertical((dir / "d.csv").string(), layout, &stats);
  EXPECT_EQ(stats.rows, 5u);
  EXPECT_EQ(stats.imputed_cells, 2u);
  EXPECT_EQ(d.party(1).columns[0], (std::vector<double>{1000, 3000, 3000, 3000, 8000}));
}

TEST(Csv, Errors) {
  auto dir = scratch("errors");
  write_file(dir / "d.csv", "label,a,b\n0,1,2\n1,x,3\n");
  ColumnLayout missing{"label", {{"a"}, {"zzz"}}};
  EXPECT_THROW(load_csv_vertical((dir / "d.csv").string(), missing), ConfigError);
  ColumnLayout ok{"label", {{"a"}, {"b"}}};
  try {
    load_csv_vertical((dir / "d.csv").string(), ok);
    ADD_FAILURE() << "expected a usage error";
  } catch (const UsageError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("line 3"), std::string::npos) << what;
    EXPECT_NE(what.find("column 'a'"), std::string::npos) << what;
  }
  EXPECT_EQ(split_csv_line("a,\"b,c\",\"d\\\"e\""),
            (std::vector<std::string>{"a", "b,c", "d\"e"}));
}

TEST(Synth, SeededAndBounded) {
  auto spec = default_spec();
  auto a = gen_synthetic(2000, spec, 4);
  auto b = gen_synthetic(2000, spec, 4);
  EXPECT_EQ(a.data.party(1).columns, b.data.party(1).columns);
  EXPECT_TRUE(std::equal(a.data.labels().begin(), a.data.labels().end(), b.data.labels().begin()));
  const auto& names = a.data.party(1).names;
  auto it = std::find(names.begin(), names.end(), "age");
  ASSERT_NE(it, names.end());
  const auto& age = a.data.party(1).columns[it - names.begin()];
  EXPECT_GE(*std::min_element(age.begin(), age.end()), 21.0);
  EXPECT_LE(*std::max_element(age.begin(), age.end()), 109.0);
  EXPECT_EQ(a.data.num_features(), 10u);
  EXPECT_EQ(a.data.party(0).num_features(), 5u);
}

double auc(std::span<const double> score, std::span<const std::uint8_t> y) {
  std::vector<std::size_t> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return score[a] < score[b]; });
  double rank_sum = 0.0, pos = 0.0;
  for (std::size_t r = 0; r < idx.size();) {
    std::size_t e = r;
    while (e < idx.size() && score[idx[e]] == score[idx[r]]) ++e;
    double mid = (r + e + 1) / 2.0;
    for (std::size_t k = r; k < e; ++k) {
      if (y[idx[k]]) {
        rank_sum += mid;
        pos += 1.0;
      }
    }
    r = e;
  }
  double neg = static_cast<double>(score.size()) - pos;
  return (rank_sum - pos * (pos + 1) / 2.0) / (pos * neg);
}

TEST(Synth, LabelRuleIsLearnable) {
  auto s = gen_synthetic(5000, default_spec(), 13);
  auto opt = testing::options_for(fed::Mode::kPlaintext, 13);
  opt.params.n_trees = 30;
  proto::Session session(s.data, opt);
  auto r = session.train();
  EXPECT_GE(auc(r.logits, s.data.labels()), 0.9);
}

TEST(Config, ParsesKeysAndPartySections) {
  auto c = parse_config(
      "# comment\nprotocol = ntee\ndata = credit.csv\nlabel = SeriousDlqin2yrs\n"
      "trees = 7\nmax_depth = 4\nlearning_rate = 0.1\nsubsample = 0.5\nlambda = 2\n"
      "bins = 16\npaillier_bits = 1024\nsamples = 1000, 10000\nattack = true\n"
      "tolerances = 1,2\nseed = 9\nout = results\n"
      "[party.0]\ncolumns = a, b\n[party.1]\ncolumns = c\n");
  EXPECT_EQ(c.protocol, "ntee");
  EXPECT_EQ(c.data_path, "credit.csv");
  EXPECT_EQ(c.label_column, "SeriousDlqin2yrs");
  EXPECT_EQ(c.params.n_trees, 7);
  EXPECT_EQ(c.params.max_depth, 4);
  EXPECT_EQ(c.params.bins, 16u);
  EXPECT_EQ(c.paillier_bits, 1024u);
  EXPECT_EQ(c.samples, (std::vector<std::size_t>{1000, 10000}));
  EXPECT_TRUE(c.attack);
  EXPECT_EQ(c.tolerances, (std::vector<double>{1, 2}));
  EXPECT_EQ(c.parties, (std::vector<std::vector<std::string>>{{"a", "b"}, {"c"}}));
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("mystery = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("trees = many\n"), ConfigError);
  auto c = parse_config("protocol = twotee\n");
  EXPECT_THROW(c.validate(), Error);
  auto dup = parse_config("data = x.csv\n[party.0]\ncolumns = a\n[party.1]\ncolumns = a\n");
  EXPECT_THROW(dup.validate(), ConfigError);
  auto label = parse_config("data = x.csv\nlabel = a\n[party.0]\ncolumns = a\n[party.1]\ncolumns = b\n");
  EXPECT_THROW(label.validate(), ConfigError);
}

ExperimentConfig small(const std::string& protocol, std::size_t n = 400) {
  ExperimentConfig c;
  c.protocol = protocol;
  c.samples = {n};
  c.paillier_bits = 512;
  c.params.n_trees = 2;
  c.seed = 3;
  return c;
}

TEST(Experiment, PlaintextReportHasNoTraffic) {
  auto r = run_experiment(small("plaintext", 1000));
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].total_bytes, 0u);
  EXPECT_EQ(r[0].expected_training_bytes, 0u);
  EXPECT_EQ(r[0].n, 1000u);
}

TEST(Experiment, SameModelAcrossProtocols) {
  std::string hash = run_experiment(small("plaintext"))[0].model_fingerprint;
  for (const char* p : {"secureboost", "ntee", "onetee"}) {
    auto r = run_experiment(small(p))[0];
    EXPECT_EQ(r.model_fingerprint, hash) << p;
    EXPECT_EQ(r.training_bytes, r.expected_training_bytes) << p;
  }
}

TEST(Experiment, ByteTotalsMatchTranscript) {
  std::stringstream transcript;
  auto r = run_experiment(small("onetee"), &transcript)[0];
  std::uint64_t sum = 0;
  std::uint64_t channel_sum = 0;
  for (std::string line; std::getline(transcript, line);) {
    sum += nlohmann::json::parse(line).at("bytes").get<std::uint64_t>();
  }
  for (const auto& c : r.channels) channel_sum += c.bytes;
  EXPECT_EQ(sum, r.total_bytes);
  EXPECT_EQ(channel_sum, r.total_bytes);
  std::uint64_t phases = 0;
  for (const auto& [name, b] : r.bytes_by_phase) phases += b;
  EXPECT_EQ(phases, r.total_bytes);
}

TEST(Experiment, DeterministicExceptTimes) {
  auto a = run_experiment(small("ntee"))[0];
  auto b = run_experiment(small("ntee"))[0];
  a.seconds = {};
  b.seconds = {};
  EXPECT_EQ(nlohmann::json(a), nlohmann::json(b));
}

TEST(Experiment, TopologyMismatchFailsBeforeWork) {
  auto c = small("onetee");
  c.protocol = "quantum";
  EXPECT_THROW(run_experiment(c), Error);
}

TEST(Report, SweepEmitsOneRowPerRunAndFourMethodsPerTolerance) {
  auto dir = scratch("report");
  std::vector<RunReport> all;
  for (const char* p : {"plaintext", "onetee"}) {
    auto c = small(p);
    c.samples = {100, 200};
    auto r = run_experiment(c);
    all.insert(all.end(), r.begin(), r.end());
  }
  auto c = small("secureboost", 150);
  c.attack = true;
  c.margin_sd = 1.0;
  c.params.n_trees = 1;
  auto attacked = run_experiment(c);
  all.insert(all.end(), attacked.begin(), attacked.end());

  emit_report(all, ReportFormat::kJson, dir.string());
  emit_report(all, ReportFormat::kCsv, dir.string());
  auto runs = read_lines(dir / "runs.csv");
  EXPECT_EQ(runs.front(), "n,protocol,seconds,bytes");
  EXPECT_EQ(runs.size(), 1u + 5u);
  EXPECT_EQ(runs[2].substr(0, 14), "200,plaintext,");

  auto acc = read_lines(dir / "accuracy.csv");
  EXPECT_EQ(acc.front(), "n,protocol,feature,method,tolerance,accuracy");
  std::size_t features = 0;
  for (const auto& row : attacked[0].attack) features += row.method == "random_minmax" && row.tolerance == 1;
  EXPECT_GT(features, 0u);
  EXPECT_EQ(acc.size(), 1u + features * 4 * c.tolerances.size());

  auto loaded = load_report_json((dir / "report.json").string());
  ASSERT_EQ(loaded.size(), all.size());
  EXPECT_EQ(nlohmann::json(loaded), nlohmann::json(all));
  emit_report(loaded, ReportFormat::kJson, (dir / "again").string());
  std::ifstream a(dir / "report.json"), b(dir / "again" / "report.json");
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

}  // namespace
}  // namespace teeboost::bench
