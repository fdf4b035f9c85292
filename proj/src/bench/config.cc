#include "teeboost/bench/config.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "teeboost/common/errors.h"
#include "teeboost/federation/topology.h"

namespace teeboost::bench {

namespace {

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> parts;
  std::string s(text);
  boost::split(parts, s, boost::is_any_of(","));
  std::vector<std::string> out;
  for (auto& p : parts) {
    boost::trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("config: bad value '" + text + "' for " + key);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  std::string t = boost::to_lower_copy(text);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError("config: bad boolean '" + text + "' for " + key);
}

}  // namespace

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& p : split_list(text)) out.push_back(parse_value<double>("list", p));
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (const auto& p : split_list(text)) out.push_back(parse_value<std::size_t>("list", p));
  return out;
}

void ExperimentConfig::validate() const {
  fed::parse_mode(protocol);
  params.validate();
  if (samples.empty()) throw ConfigError("config: samples list is empty");
  for (auto n : samples) {
    if (n < 2) throw ConfigError("config: every sample count must be at least 2");
  }
  if (data_path && parties.empty()) throw ConfigError("config: CSV input needs [party.N] sections");
  std::set<std::string> seen{label_column};
  for (std::size_t p = 0; p < parties.size(); ++p) {
    for (const auto& c : parties[p]) {
      if (!seen.insert(c).second) {
        throw ConfigError("config: column '" + c + "' is listed twice or is the label");
      }
    }
  }
  if (!data_path && (active_features > features || num_parties < 2)) {
    throw ConfigError("config: synthetic layout needs active_features <= features and 2+ parties");
  }
  if (paillier_bits < 64 || paillier_bits % 2 != 0) {
    throw ConfigError("config: paillier_bits must be an even number >= 64");
  }
  if (!(margin_sd >= 0.0)) throw ConfigError("config: margin_sd must be >= 0");
}

ExperimentConfig parse_config(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  ExperimentConfig c;
  for (const auto& [key, node] : tree) {
    if (!node.empty()) {
      if (!boost::starts_with(key, "party.")) throw ConfigError("config: unknown section [" + key + "]");
      auto p = parse_value<std::size_t>(key, key.substr(6));
      if (p >= c.parties.size()) c.parties.resize(p + 1);
      for (const auto& [k, v] : node) {
        if (k != "columns") throw ConfigError("config: unknown key '" + k + "' in [" + key + "]");
        c.parties[p] = split_list(v.data());
      }
      continue;
    }
    const std::string v = boost::trim_copy(node.data());
    if (key == "protocol") c.protocol = v;
    else if (key == "data") c.data_path = v;
    else if (key == "label") c.label_column = v;
    else if (key == "trees") c.params.n_trees = parse_value<int>(key, v);
    else if (key == "max_depth") c.params.max_depth = parse_value<int>(key, v);
    else if (key == "learning_rate") c.params.learning_rate = parse_value<double>(key, v);
    else if (key == "subsample") c.params.subsample = parse_value<double>(key, v);
    else if (key == "lambda") c.params.lambda = parse_value<double>(key, v);
    else if (key == "bins") c.params.bins = parse_value<std::size_t>(key, v);
    else if (key == "paillier_bits") c.paillier_bits = parse_value<std::size_t>(key, v);
    else if (key == "samples") c.samples = parse_size_list(v);
    else if (key == "features") c.features = parse_value<std::size_t>(key, v);
    else if (key == "active_features") c.active_features = parse_value<std::size_t>(key, v);
    else if (key == "parties") c.num_parties = parse_value<std::size_t>(key, v);
    else if (key == "attack") c.attack = parse_bool(key, v);
    else if (key == "tolerances") c.tolerances = parse_double_list(v);
    else if (key == "margin_sd") c.margin_sd = parse_value<double>(key, v);
    else if (key == "enclave_memory") c.enclave_memory = parse_value<std::size_t>(key, v);
    else if (key == "seed") c.seed = parse_value<std::uint64_t>(key, v);
    else if (key == "out") c.out = v;
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  for (std::size_t p = 0; p < c.parties.size(); ++p) {
    if (c.parties[p].empty() && p != 0) {
      throw ConfigError("config: [party." + std::to_string(p) + "] is missing or empty");
    }
  }
  c.params.seed = c.seed;
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace teeboost::bench
