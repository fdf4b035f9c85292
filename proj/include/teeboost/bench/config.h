#ifndef TEEBOOST_BENCH_CONFIG_H_
#define TEEBOOST_BENCH_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "teeboost/bench/csv.h"
#include "teeboost/core/booster.h"

namespace teeboost::bench {

struct ExperimentConfig {
  std::string protocol = "secureboost";
  // CSV input; unset means synthetic data.
  std::optional<std::string> data_path;
  std::string label_column = "label";
  // Column names per party, party 0 first. Required with data_path.
  std::vector<std::vector<std::string>> parties;
  core::Hyperparams params;
  std::size_t paillier_bits = 2048;
  std::vector<std::size_t> samples = {1000};
  // Synthetic layout: total features, active-party features, parties.
  std::size_t features = 10;
  std::size_t active_features = 5;
  std::size_t num_parties = 2;
  bool attack = false;
  std::vector<double> tolerances = {1, 2, 5, 10};
  // Standard deviation of a seeded per-row starting logit (warm start). The
  // attack needs distinct gradients, which a cold start does not give.
  double margin_sd = 0.0;
  std::size_t enclave_memory = 0;
  std::uint64_t seed = 0;
  std::string out = "out";

  // ConfigError when the layout is unusable: duplicate columns, label
  // among the features, no parties with data_path, unknown protocol.
  void validate() const;
  ColumnLayout layout() const { return {label_column, parties}; }
};

// Flat key = value lines; "[party.N]" sections hold "columns = a, b, c".
// Blank lines and lines starting with '#' or ';' are ignored.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

std::vector<double> parse_double_list(std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view text);

}  // namespace teeboost::bench

#endif  // TEEBOOST_BENCH_CONFIG_H_
