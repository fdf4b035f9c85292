#ifndef TEEBOOST_BENCH_REPORT_H_
#define TEEBOOST_BENCH_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace teeboost::bench {

struct AccuracyRow {
  std::string feature;
  std::string method;
  double tolerance = 0.0;
  double accuracy = 0.0;
};

struct ChannelBytes {
  std::string sender;
  std::string receiver;
  std::string phase;
  std::uint64_t bytes = 0;
};

struct Timing {
  double setup = 0.0;
  double train = 0.0;
  double gradient_encrypt = 0.0;
  double aggregate = 0.0;
  double decide = 0.0;
  double partition = 0.0;
};

struct RunReport {
  std::string protocol;
  std::size_t n = 0;
  std::size_t bins = 0;
  std::size_t paillier_bits = 0;
  int trees = 0;
  int max_depth = 0;
  double learning_rate = 0.0;
  double subsample = 0.0;
  double lambda = 0.0;
  std::uint64_t seed = 0;

  Timing seconds;
  std::map<std::string, std::uint64_t> bytes_by_phase;
  std::uint64_t total_bytes = 0;
  std::uint64_t training_bytes = 0;
  std::uint64_t expected_training_bytes = 0;
  std::vector<ChannelBytes> channels;

  std::string model_fingerprint;
  std::size_t num_leaves = 0;
  double train_accuracy = 0.0;

  bool attack_run = false;
  bool nothing_to_attack = false;
  std::vector<AccuracyRow> attack;
};

void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

enum class ReportFormat { kJson, kCsv };

// kJson writes <dir>/report.json holding every run. kCsv writes
// <dir>/runs.csv (n,protocol,seconds,bytes) and, when any run attacked,
// <dir>/accuracy.csv (n,protocol,feature,method,tolerance,accuracy).
// UsageError when the directory cannot be created or written.
void emit_report(const std::vector<RunReport>& reports, ReportFormat format,
                 const std::string& dir);

std::vector<RunReport> load_report_json(const std::string& path);

}  // namespace teeboost::bench

#endif  // TEEBOOST_BENCH_REPORT_H_
