#include "teeboost/core/booster.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "teeboost/common/errors.h"
#include "teeboost/common/rng.h"

namespace teeboost::core {

void Hyperparams::validate() const {
  if (max_depth < 1) throw UsageError("max_depth must be >= 1");
  if (!(subsample > 0.0 && subsample <= 1.0)) throw UsageError("subsample must be in (0, 1]");
  if (!(lambda >= 0.0)) throw UsageError("lambda must be >= 0");
  if (bins < 2) throw UsageError("bins must be >= 2");
  if (n_trees < 0) throw UsageError("n_trees must be >= 0");
  if (!std::isfinite(learning_rate)) throw UsageError("learning_rate must be finite");
}

std::vector<SampleId> subsample_rows(std::size_t n, double fraction, std::uint64_t seed,
                                     std::uint32_t round) {
  std::vector<SampleId> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = static_cast<SampleId>(i);
  if (fraction >= 1.0 || n == 0) return rows;
  Rng rng(derive_seed(seed, round));
  shuffle(std::span<SampleId>(rows), rng);
  auto keep = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  keep = std::clamp<std::size_t>(keep, 1, n);
  rows.resize(keep);
  std::sort(rows.begin(), rows.end());
  return rows;
}

namespace {

struct Frontier {
  std::int32_t node;
  std::vector<SampleId> instances;
};

std::vector<SampleId> set_difference(std::span<const SampleId> all, std::span<const SampleId> left) {
  std::vector<SampleId> out;
  out.reserve(all.size() - std::min(all.size(), left.size()));
  std::set_difference(all.begin(), all.end(), left.begin(), left.end(), std::back_inserter(out));
  return out;
}

// Grows one tree breadth-first. Leaf members of the subsample are reported in
// `leaf_members` so their logits can be updated without routing.
RegressionTree grow_tree(std::span<const FixedGradient> gradients,
                         std::vector<SampleId> instances, const Hyperparams& params,
                         SplitStrategy& strategy,
                         std::vector<std::vector<SampleId>>& leaf_members) {
  RegressionTree tree;
  tree.nodes.emplace_back();
  std::vector<Frontier> frontier;
  frontier.push_back({0, std::move(instances)});
  leaf_members.assign(1, {});

  auto close_leaf = [&](Frontier& f) {
    GradientTotals t = node_totals(gradients, f.instances);
    tree.nodes[f.node].leaf = true;
    tree.nodes[f.node].weight = leaf_weight(crypto::fixed_decode(t.g), crypto::fixed_decode(t.h),
                                            params.lambda, params.learning_rate);
    if (leaf_members.size() < tree.nodes.size()) leaf_members.resize(tree.nodes.size());
    leaf_members[f.node] = std::move(f.instances);
  };

  for (int depth = 0; !frontier.empty(); ++depth) {
    std::vector<Frontier> to_split;
    for (auto& f : frontier) {
      if (depth < params.max_depth && f.instances.size() >= 2) {
        to_split.push_back(std::move(f));
      } else {
        close_leaf(f);
      }
    }
    frontier.clear();
    if (to_split.empty()) break;

    std::vector<LevelTask> tasks;
    tasks.reserve(to_split.size());
    for (const auto& f : to_split) tasks.push_back({f.node, f.instances});
    auto decisions = strategy.split_level(static_cast<std::uint32_t>(depth), tasks);
    if (decisions.size() != tasks.size()) {
      throw ContractViolation("split_level returned " + std::to_string(decisions.size()) +
                              " decisions for " + std::to_string(tasks.size()) + " tasks");
    }
    for (std::size_t t = 0; t < to_split.size(); ++t) {
      auto& f = to_split[t];
      if (!decisions[t]) {
        close_leaf(f);
        continue;
      }
      const auto& d = *decisions[t];
      auto left_id = static_cast<std::int32_t>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      auto& node = tree.nodes[f.node];
      node.leaf = false;
      node.party = d.party;
      node.record_id = d.record_id;
      node.left = left_id;
      node.right = left_id + 1;
      std::vector<SampleId> right = set_difference(f.instances, d.left);
      frontier.push_back({left_id, d.left});
      frontier.push_back({left_id + 1, std::move(right)});
    }
  }
  leaf_members.resize(tree.nodes.size());
  return tree;
}

// Adds the tree's leaf weights to every row. Rows outside the subsample are
// routed through the owners, one batched query per internal node.
void apply_tree(const RegressionTree& tree, const std::vector<std::vector<SampleId>>& leaf_members,
                std::span<const SampleId> subsample, SplitStrategy& strategy,
                std::vector<double>& logits) {
  std::vector<char> in_sample(logits.size(), 0);
  for (SampleId i : subsample) in_sample[i] = 1;
  for (std::size_t node = 0; node < tree.nodes.size(); ++node) {
    if (!tree.nodes[node].leaf) continue;
    for (SampleId i : leaf_members[node]) logits[i] += tree.nodes[node].weight;
  }
  std::vector<SampleId> rest;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!in_sample[i]) rest.push_back(static_cast<SampleId>(i));
  }
  std::vector<Frontier> frontier;
  if (!rest.empty()) frontier.push_back({0, std::move(rest)});
  while (!frontier.empty()) {
    std::vector<Frontier> next;
    for (auto& f : frontier) {
      const auto& node = tree.nodes[f.node];
      if (node.leaf) {
        for (SampleId i : f.instances) logits[i] += node.weight;
        continue;
      }
      auto dirs = strategy.route(node.party, node.record_id, f.instances);
      Frontier l{node.left, {}}, r{node.right, {}};
      for (std::size_t j = 0; j < f.instances.size(); ++j) {
        (dirs[j] ? l : r).instances.push_back(f.instances[j]);
      }
      if (!l.instances.empty()) next.push_back(std::move(l));
      if (!r.instances.empty()) next.push_back(std::move(r));
    }
    frontier = std::move(next);
  }
}

}  // namespace

TrainResult train(std::span<const std::uint8_t> labels, const Hyperparams& params,
                  SplitStrategy& strategy, std::span<const double> base_margin) {
  params.validate();
  if (labels.empty()) throw UsageError("train: empty dataset");
  TrainResult out;
  out.model.learning_rate = params.learning_rate;
  out.model.base_score = 0.0;
  out.logits.assign(labels.size(), out.model.base_score);
  if (!base_margin.empty()) {
    if (base_margin.size() != labels.size()) {
      throw UsageError("train: base margin needs one value per row");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) out.logits[i] += base_margin[i];
  }

  for (int round = 0; round < params.n_trees; ++round) {
    auto r = static_cast<std::uint32_t>(round);
    auto instances = subsample_rows(labels.size(), params.subsample, params.seed, r);
    auto gradients = encode_gradients(compute_gradients(out.logits, labels));
    strategy.begin_tree(r, gradients, instances);
    std::vector<std::vector<SampleId>> leaf_members;
    RegressionTree tree = grow_tree(gradients, instances, params, strategy, leaf_members);
    apply_tree(tree, leaf_members, instances, strategy, out.logits);
    out.model.trees.push_back(std::move(tree));
  }
  return out;
}

}  // namespace teeboost::core
