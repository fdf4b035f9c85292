#include "teeboost/bench/report.h"

#include <filesystem>
#include <fstream>

#include "teeboost/common/errors.h"

namespace teeboost::bench {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AccuracyRow, feature, method, tolerance, accuracy)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ChannelBytes, sender, receiver, phase, bytes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Timing, setup, train, gradient_encrypt, aggregate, decide,
                                   partition)

void to_json(nlohmann::json& j, const RunReport& r) {
  j = {{"protocol", r.protocol},
       {"n", r.n},
       {"bins", r.bins},
       {"paillier_bits", r.paillier_bits},
       {"trees", r.trees},
       {"max_depth", r.max_depth},
       {"learning_rate", r.learning_rate},
       {"subsample", r.subsample},
       {"lambda", r.lambda},
       {"seed", r.seed},
       {"seconds", r.seconds},
       {"bytes_by_phase", r.bytes_by_phase},
       {"total_bytes", r.total_bytes},
       {"training_bytes", r.training_bytes},
       {"expected_training_bytes", r.expected_training_bytes},
       {"channels", r.channels},
       {"model_fingerprint", r.model_fingerprint},
       {"num_leaves", r.num_leaves},
       {"train_accuracy", r.train_accuracy},
       {"attack_run", r.attack_run},
       {"nothing_to_attack", r.nothing_to_attack},
       {"attack", r.attack}};
}

void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("protocol").get_to(r.protocol);
  j.at("n").get_to(r.n);
  j.at("bins").get_to(r.bins);
  j.at("paillier_bits").get_to(r.paillier_bits);
  j.at("trees").get_to(r.trees);
  j.at("max_depth").get_to(r.max_depth);
  j.at("learning_rate").get_to(r.learning_rate);
  j.at("subsample").get_to(r.subsample);
  j.at("lambda").get_to(r.lambda);
  j.at("seed").get_to(r.seed);
  j.at("seconds").get_to(r.seconds);
  j.at("bytes_by_phase").get_to(r.bytes_by_phase);
  j.at("total_bytes").get_to(r.total_bytes);
  j.at("training_bytes").get_to(r.training_bytes);
  j.at("expected_training_bytes").get_to(r.expected_training_bytes);
  j.at("channels").get_to(r.channels);
  j.at("model_fingerprint").get_to(r.model_fingerprint);
  j.at("num_leaves").get_to(r.num_leaves);
  j.at("train_accuracy").get_to(r.train_accuracy);
  j.at("attack_run").get_to(r.attack_run);
  j.at("nothing_to_attack").get_to(r.nothing_to_attack);
  j.at("attack").get_to(r.attack);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out.precision(17);
  return out;
}

}  // namespace

void emit_report(const std::vector<RunReport>& reports, ReportFormat format,
                 const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir + ": " + ec.message());
  const std::filesystem::path base(dir);
  if (format == ReportFormat::kJson) {
    auto out = open_out(base / "report.json");
    out << nlohmann::json(reports).dump(2) << '\n';
    if (!out) throw UsageError("error writing report.json");
    return;
  }
  {
    auto out = open_out(base / "runs.csv");
    out << "n,protocol,seconds,bytes\n";
    for (const auto& r : reports) {
      out << r.n << ',' << r.protocol << ',' << r.seconds.train << ',' << r.training_bytes << '\n';
    }
    if (!out) throw UsageError("error writing runs.csv");
  }
  bool any_attack = false;
  for (const auto& r : reports) any_attack = any_attack || !r.attack.empty();
  if (!any_attack) return;
  auto out = open_out(base / "accuracy.csv");
  out << "n,protocol,feature,method,tolerance,accuracy\n";
  for (const auto& r : reports) {
    for (const auto& a : r.attack) {
      out << r.n << ',' << r.protocol << ',' << a.feature << ',' << a.method << ','
          << a.tolerance << ',' << a.accuracy << '\n';
    }
  }
  if (!out) throw UsageError("error writing accuracy.csv");
}

std::vector<RunReport> load_report_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return nlohmann::json::parse(in).get<std::vector<RunReport>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

}  // namespace teeboost::bench
