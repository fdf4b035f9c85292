#include "teeboost/protocols/adversary_view.h"

#include <string>

#include "teeboost/common/errors.h"

namespace teeboost::proto {

const NodeView* AdversaryView::first_root() const {
  for (const auto& n : nodes) {
    if (n.level == 0) return &n;
  }
  return nullptr;
}

nlohmann::json to_json(const AdversaryView& view) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : view.nodes) {
    json parties = json::object();
    for (const auto& [p, features] : n.parties) {
      json fs = json::array();
      for (const auto& f : features) fs.push_back({{"g", f.g}, {"h", f.h}});
      parties[std::to_string(p)] = std::move(fs);
    }
    nodes.push_back({{"round", n.round},
                     {"level", n.level},
                     {"position", n.position},
                     {"instances", n.instances},
                     {"parties", std::move(parties)}});
  }
  json grads = json::object();
  for (const auto& [round, gs] : view.round_gradients) {
    std::vector<std::uint64_t> g, h;
    g.reserve(gs.size());
    h.reserve(gs.size());
    for (const auto& x : gs) {
      g.push_back(x.g);
      h.push_back(x.h);
    }
    grads[std::to_string(round)] = {{"g", g}, {"h", h}};
  }
  return {{"nodes", std::move(nodes)}, {"gradients", std::move(grads)}};
}

AdversaryView adversary_view_from_json(const nlohmann::json& j) {
  AdversaryView view;
  try {
    for (const auto& jn : j.at("nodes")) {
      NodeView n;
      n.round = jn.at("round").get<std::uint32_t>();
      n.level = jn.at("level").get<std::uint32_t>();
      n.position = jn.at("position").get<std::uint32_t>();
      n.instances = jn.at("instances").get<std::vector<core::SampleId>>();
      for (const auto& [key, fs] : jn.at("parties").items()) {
        auto& features = n.parties[static_cast<core::PartyId>(std::stoul(key))];
        for (const auto& f : fs) {
          core::BucketSums b;
          b.g = f.at("g").get<std::vector<std::uint64_t>>();
          b.h = f.at("h").get<std::vector<std::uint64_t>>();
          if (b.g.size() != b.h.size()) throw UsageError("bucket g/h length mismatch");
          features.push_back(std::move(b));
        }
      }
      view.nodes.push_back(std::move(n));
    }
    for (const auto& [key, jg] : j.at("gradients").items()) {
      auto g = jg.at("g").get<std::vector<std::uint64_t>>();
      auto h = jg.at("h").get<std::vector<std::uint64_t>>();
      if (g.size() != h.size()) throw UsageError("gradient g/h length mismatch");
      auto& out = view.round_gradients[static_cast<std::uint32_t>(std::stoul(key))];
      out.resize(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = {g[i], h[i]};
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed adversary view: ") + e.what());
  }
  return view;
}

}  // namespace teeboost::proto
