#ifndef TEEBOOST_BENCH_EXPERIMENT_H_
#define TEEBOOST_BENCH_EXPERIMENT_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "teeboost/attack/partial_order.h"
#include "teeboost/bench/accounting.h"
#include "teeboost/bench/config.h"
#include "teeboost/bench/report.h"
#include "teeboost/protocols/session.h"

namespace teeboost::bench {

// The four guessing methods on one feature. `truth` is indexed by SampleId;
// `reference` is a disjoint sample the priors are built from (min/max and a
// 10-bin histogram).
std::vector<AccuracyRow> evaluate_attack(const attack::FeatureOrder& order,
                                         std::span<const double> truth,
                                         std::span<const double> reference,
                                         std::span<const double> tolerances, std::uint64_t seed,
                                         const std::string& feature_name);

FederationShape shape_of(const proto::Session& session);

// Seeded N(0, sd) starting logits, or empty when sd is 0.
std::vector<double> warm_start_margin(std::size_t n, double sd, std::uint64_t seed);

// Trains one configuration per sample count and reports timing, traffic,
// model and (optionally) attack results. Config errors surface before any
// training. Transcripts go to `transcript_out` when non-null.
std::vector<RunReport> run_experiment(const ExperimentConfig& config,
                                      std::ostream* transcript_out = nullptr);

}  // namespace teeboost::bench

#endif  // TEEBOOST_BENCH_EXPERIMENT_H_
