// Command-line front end: train, attack, bench, synth.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "teeboost/bench/config.h"
#include "teeboost/bench/csv.h"
#include "teeboost/bench/experiment.h"
#include "teeboost/bench/report.h"
#include "teeboost/bench/synth.h"
#include "teeboost/common/errors.h"
#include "teeboost/protocols/adversary_view.h"

namespace {

using teeboost::bench::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct Flags {
  std::string protocol;
  std::string config;
  std::string samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paillier_bits;
  std::optional<std::size_t> bins;
  std::string tolerances;
  std::optional<double> margin_sd;
  std::string out;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--protocol", f.protocol, "plaintext, secureboost, ntee or onetee");
  cmd->add_option("--config", f.config, "experiment config file")->check(CLI::ExistingFile);
  cmd->add_option("--samples", f.samples, "sample count, or comma list for bench");
  cmd->add_option("--seed", f.seed, "seed for data, subsampling and keys");
  cmd->add_option("--paillier-bits", f.paillier_bits, "Paillier modulus size");
  cmd->add_option("--bins", f.bins, "buckets per feature");
  cmd->add_option("--tolerances", f.tolerances, "comma list of attack tolerances");
  cmd->add_option("--margin-sd", f.margin_sd, "spread of the random starting margin");
  cmd->add_option("--out", f.out, "output directory");
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig c = f.config.empty() ? ExperimentConfig{} : teeboost::bench::load_config(f.config);
  if (!f.protocol.empty()) c.protocol = f.protocol;
  if (!f.samples.empty()) c.samples = teeboost::bench::parse_size_list(f.samples);
  if (f.seed) c.seed = *f.seed;
  if (f.paillier_bits) c.paillier_bits = *f.paillier_bits;
  if (f.bins) c.params.bins = *f.bins;
  if (!f.tolerances.empty()) c.tolerances = teeboost::bench::parse_double_list(f.tolerances);
  if (f.margin_sd) c.margin_sd = *f.margin_sd;
  if (!f.out.empty()) c.out = f.out;
  c.params.seed = c.seed;
  return c;
}

void print_summary(const std::vector<teeboost::bench::RunReport>& reports) {
  for (const auto& r : reports) {
    std::cout << r.protocol << " n=" << r.n << " train_s=" << r.seconds.train
              << " training_bytes=" << r.training_bytes << " leaves=" << r.num_leaves
              << " train_acc=" << r.train_accuracy << " model=" << r.model_fingerprint.substr(0, 16)
              << '\n';
    if (r.attack_run && r.nothing_to_attack) std::cout << "  attack: nothing to attack\n";
    for (const auto& a : r.attack) {
      std::cout << "  " << a.feature << ' ' << a.method << " tol=" << a.tolerance
                << " acc=" << a.accuracy << '\n';
    }
  }
}

void write_all(const ExperimentConfig& c, const std::vector<teeboost::bench::RunReport>& reports) {
  teeboost::bench::emit_report(reports, teeboost::bench::ReportFormat::kJson, c.out);
  teeboost::bench::emit_report(reports, teeboost::bench::ReportFormat::kCsv, c.out);
}

int run_train(const Flags& f, bool attack) {
  ExperimentConfig c = build_config(f);
  if (attack) {
    c.attack = true;
    if (f.protocol.empty() && f.config.empty()) c.protocol = "secureboost";
  }
  if (c.samples.size() != 1) throw teeboost::UsageError("train/attack take a single sample count");
  std::filesystem::create_directories(c.out);
  std::ofstream transcript(std::filesystem::path(c.out) / "transcript.jsonl");
  auto reports = teeboost::bench::run_experiment(c, &transcript);
  write_all(c, reports);
  print_summary(reports);
  return kExitOk;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  return out;
}

int run_bench(const Flags& f) {
  ExperimentConfig base = build_config(f);
  std::vector<std::string> protocols = {"secureboost", "ntee", "onetee"};
  if (!f.protocol.empty()) protocols = split_names(f.protocol);
  std::vector<teeboost::bench::RunReport> all;
  for (const auto& p : protocols) {
    ExperimentConfig c = base;
    c.protocol = p;
    c.validate();
  }
  for (const auto& p : protocols) {
    ExperimentConfig c = base;
    c.protocol = p;
    auto reports = teeboost::bench::run_experiment(c);
    print_summary(reports);
    all.insert(all.end(), reports.begin(), reports.end());
  }
  write_all(base, all);
  return kExitOk;
}

int run_synth(const Flags& f, std::size_t features, std::size_t active, std::size_t parties) {
  ExperimentConfig c = build_config(f);
  if (c.samples.size() != 1) throw teeboost::UsageError("synth takes a single sample count");
  auto spec = teeboost::bench::default_spec(features, active, parties);
  auto s = teeboost::bench::gen_synthetic(c.samples.front(), spec, c.seed);
  std::filesystem::create_directories(c.out);
  auto path = (std::filesystem::path(c.out) / "synthetic.csv").string();
  teeboost::bench::save_csv_vertical(path, s.data, s.layout);
  std::cout << "wrote " << path << " (" << s.data.num_samples() << " rows)\n";
  for (std::size_t p = 0; p < s.layout.parties.size(); ++p) {
    std::cout << "[party." << p << "]\ncolumns = ";
    for (std::size_t k = 0; k < s.layout.parties[p].size(); ++k) {
      std::cout << (k ? ", " : "") << s.layout.parties[p][k];
    }
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vertical federated boosting simulator"};
  app.require_subcommand(1);
  Flags flags;
  std::size_t features = 10, active = 5, parties = 2;

  auto* train = app.add_subcommand("train", "train one configuration and report traffic and time");
  add_common(train, flags);
  auto* attack = app.add_subcommand("attack", "train with SecureBoost and attack the decrypted sums");
  add_common(attack, flags);
  auto* bench = app.add_subcommand("bench", "sweep protocols and sample counts");
  add_common(bench, flags);
  auto* synth = app.add_subcommand("synth", "write a synthetic CSV");
  add_common(synth, flags);
  synth->add_option("--features", features, "total features");
  synth->add_option("--active-features", active, "features held by the active party");
  synth->add_option("--parties", parties, "party count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return run_train(flags, false);
    if (*attack) return run_train(flags, true);
    if (*bench) return run_bench(flags);
    if (*synth) return run_synth(flags, features, active, parties);
  } catch (const teeboost::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const teeboost::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
