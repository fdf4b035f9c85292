#include "teeboost/bench/experiment.h"

#include <chrono>
#include <map>
#include <numeric>
#include <optional>

#include "teeboost/attack/guessing.h"
#include "teeboost/bench/csv.h"
#include "teeboost/bench/synth.h"
#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"

namespace teeboost::bench {

using core::SampleId;

std::vector<AccuracyRow> evaluate_attack(const attack::FeatureOrder& order,
                                         std::span<const double> truth,
                                         std::span<const double> reference,
                                         std::span<const double> tolerances, std::uint64_t seed,
                                         const std::string& feature_name) {
  using attack::Method;
  const attack::MinMaxPrior minmax{*std::min_element(reference.begin(), reference.end()),
                                   *std::max_element(reference.begin(), reference.end())};
  const attack::HistogramPrior hist = attack::HistogramPrior::from_sample(reference, 10);

  std::vector<SampleId> ids;
  for (const auto& g : order.groups) ids.insert(ids.end(), g.begin(), g.end());
  std::vector<double> actual;
  for (SampleId i : ids) actual.push_back(truth[i]);

  auto ordered = [&](const attack::Prior& prior) {
    std::map<SampleId, double> by_id;
    for (const auto& g : attack::assign_values(order.groups, prior)) by_id[g.id] = g.value;
    std::vector<double> out;
    for (SampleId i : ids) out.push_back(by_id.at(i));
    return out;
  };

  std::vector<AccuracyRow> rows;
  for (Method m : attack::kAllMethods) {
    std::vector<double> guesses;
    switch (m) {
      case Method::kRandomMinMax:
        guesses = attack::random_baseline(ids.size(), minmax, derive_seed(seed, 1));
        break;
      case Method::kAttackMinMax:
        guesses = ordered(minmax);
        break;
      case Method::kRandomDistribution:
        guesses = attack::random_baseline(ids.size(), hist, derive_seed(seed, 2));
        break;
      case Method::kAttackDistribution:
        guesses = ordered(hist);
        break;
    }
    auto acc = attack::guess_accuracy(guesses, actual, tolerances);
    for (std::size_t t = 0; t < tolerances.size(); ++t) {
      rows.push_back({feature_name, std::string(attack::method_name(m)), tolerances[t], acc[t]});
    }
  }
  return rows;
}

FederationShape shape_of(const proto::Session& session) {
  FederationShape shape;
  shape.paillier_bits = session.options().paillier_bits;
  for (const auto& p : session.parties()) {
    std::vector<std::uint32_t> b;
    for (const auto& t : p.binning().thresholds) b.push_back(static_cast<std::uint32_t>(t.num_buckets()));
    shape.buckets.push_back(std::move(b));
  }
  return shape;
}

std::vector<double> warm_start_margin(std::size_t n, double sd, std::uint64_t seed) {
  if (sd == 0.0) return {};
  Rng rng(derive_seed(seed, 0x6d617267));
  std::vector<double> out(n);
  for (auto& x : out) x = sd * standard_normal(rng);
  return out;
}

namespace {

struct Source {
  core::VerticalDataset data;
  // Same columns drawn independently, for attack priors.
  std::optional<core::VerticalDataset> reference;
};

Source make_source(const ExperimentConfig& config, std::size_t n,
                   const std::optional<core::VerticalDataset>& csv) {
  if (csv) {
    if (n > csv->num_samples()) {
      throw ConfigError("requested " + std::to_string(n) + " samples, CSV has " +
                        std::to_string(csv->num_samples()));
    }
    std::vector<SampleId> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    return {csv->select(rows), std::nullopt};
  }
  auto spec = default_spec(config.features, config.active_features, config.num_parties);
  Source s{gen_synthetic(n, spec, config.seed).data, std::nullopt};
  if (config.attack) s.reference = gen_synthetic(n, spec, derive_seed(config.seed, 0xd15)).data;
  return s;
}

}  // namespace

std::vector<RunReport> run_experiment(const ExperimentConfig& config,
                                      std::ostream* transcript_out) {
  config.validate();
  const fed::Mode mode = fed::parse_mode(config.protocol);

  std::optional<core::VerticalDataset> csv;
  if (config.data_path) csv = load_csv_vertical(*config.data_path, config.layout());

  std::vector<RunReport> reports;
  for (std::size_t n : config.samples) {
    Source src = make_source(config, n, csv);
    proto::SessionOptions opt;
    opt.mode = mode;
    opt.params = config.params;
    opt.params.seed = config.seed;
    opt.paillier_bits = config.paillier_bits;
    opt.crypto_seed = config.seed;
    opt.enclave_memory = config.enclave_memory;
    opt.record_view = config.attack;
    proto::Session session(src.data, opt);

    auto margin = warm_start_margin(n, config.margin_sd, config.seed);
    const auto start = std::chrono::steady_clock::now();
    core::TrainResult result = session.train(margin);
    const double train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    RunReport r;
    r.protocol = std::string(fed::mode_name(mode));
    r.n = n;
    r.bins = opt.params.bins;
    r.paillier_bits = mode == fed::Mode::kSecureBoost ? config.paillier_bits : 0;
    r.trees = opt.params.n_trees;
    r.max_depth = opt.params.max_depth;
    r.learning_rate = opt.params.learning_rate;
    r.subsample = opt.params.subsample;
    r.lambda = opt.params.lambda;
    r.seed = config.seed;

    const auto& ctx = session.context();
    r.seconds = {session.setup_seconds(), train_seconds,     ctx.timings.gradient_encrypt,
                 ctx.timings.aggregate,   ctx.timings.decide, ctx.timings.partition};
    const auto& net = session.network();
    for (std::size_t p = 0; p < fed::kNumPhases; ++p) {
      auto phase = static_cast<fed::Phase>(p);
      r.bytes_by_phase[std::string(fed::phase_name(phase))] = net.bytes(phase);
    }
    r.total_bytes = net.total_bytes();
    r.training_bytes = net.training_bytes();
    r.expected_training_bytes = expected_training_bytes(mode, shape_of(session), ctx.trace);
    std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t> channels;
    for (const auto& t : net.transcript()) {
      channels[{fed::to_string(t.sender), fed::to_string(t.receiver),
                std::string(fed::phase_name(t.phase))}] += t.bytes;
    }
    for (const auto& [key, bytes] : channels) {
      r.channels.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), bytes});
    }
    if (transcript_out != nullptr) net.write_transcript(*transcript_out);

    r.model_fingerprint = session.fingerprint(result.model);
    for (const auto& t : result.model.trees) r.num_leaves += t.num_leaves();
    std::size_t correct = 0;
    auto labels = src.data.labels();
    for (std::size_t i = 0; i < n; ++i) correct += (result.logits[i] > 0.0) == (labels[i] == 1);
    r.train_accuracy = static_cast<double>(correct) / static_cast<double>(n);

    if (config.attack) {
      r.attack_run = true;
      auto order = attack::infer_partial_order(ctx.view);
      r.nothing_to_attack = order.nothing_to_attack;
      for (const auto& f : order.features) {
        const auto& column = src.data.party(f.party).columns.at(f.feature);
        const auto& reference =
            src.reference ? src.reference->party(f.party).columns.at(f.feature) : column;
        auto rows = evaluate_attack(f, column, reference, config.tolerances,
                                    derive_seed(config.seed, n),
                                    src.data.party(f.party).names.at(f.feature));
        r.attack.insert(r.attack.end(), rows.begin(), rows.end());
      }
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace teeboost::bench
