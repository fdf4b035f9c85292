#include "teeboost/bench/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>

#include <boost/algorithm/string/trim.hpp>
#include <boost/tokenizer.hpp>

#include "teeboost/common/errors.h"

namespace teeboost::bench {

std::vector<std::string> split_csv_line(const std::string& line) {
  boost::escaped_list_separator<char> sep('\\', ',', '"');
  boost::tokenizer<boost::escaped_list_separator<char>> tok(line, sep);
  std::vector<std::string> out;
  try {
    for (const auto& t : tok) out.push_back(boost::algorithm::trim_copy(t));
  } catch (const boost::escaped_list_error& e) {
    throw UsageError(std::string("malformed CSV line: ") + e.what());
  }
  return out;
}

namespace {

bool is_missing(const std::string& cell) { return cell.empty() || cell == "NA" || cell == "na"; }

std::optional<double> parse_number(const std::string& cell) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

double median(std::vector<double> v) {
  if (v.empty()) throw UsageError("column has no values to impute from");
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  double hi = *mid;
  if (v.size() % 2 == 1) return hi;
  double lo = *std::max_element(v.begin(), mid);
  return lo + (hi - lo) / 2.0;
}

}  // namespace

core::VerticalDataset load_csv_vertical(const std::string& path, const ColumnLayout& layout,
                                        LoadStats* stats) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw UsageError(path + ": empty file, header row expected");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_csv_line(line);
  std::map<std::string, std::size_t> index;
  for (std::size_t c = 0; c < header.size(); ++c) index.emplace(header[c], c);
  auto column = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) throw ConfigError(path + ": configured column '" + name + "' not found");
    return it->second;
  };
  const std::size_t label_col = column(layout.label_column);
  std::vector<std::vector<std::size_t>> party_cols(layout.parties.size());
  for (std::size_t p = 0; p < layout.parties.size(); ++p) {
    for (const auto& name : layout.parties[p]) party_cols[p].push_back(column(name));
  }

  // raw[col] holds parsed values; missing cells are NaN until imputed.
  std::map<std::size_t, std::vector<double>> raw;
  for (const auto& cols : party_cols) {
    for (auto c : cols) raw[c];
  }
  std::vector<std::uint8_t> labels;
  std::size_t row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw UsageError(path + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(header.size()));
    }
    for (auto& [c, values] : raw) {
      const auto& cell = cells[c];
      if (is_missing(cell)) {
        values.push_back(std::nan(""));
        continue;
      }
      auto v = parse_number(cell);
      if (!v) {
        throw UsageError(path + ": non-numeric cell '" + cell + "' at line " +
                         std::to_string(line_no) + ", column '" + header[c] + "'");
      }
      values.push_back(*v);
    }
    auto y = parse_number(cells[label_col]);
    if (!y || (*y != 0.0 && *y != 1.0)) {
      throw UsageError(path + ": label at line " + std::to_string(line_no) + " is '" +
                       cells[label_col] + "', expected 0 or 1");
    }
    labels.push_back(static_cast<std::uint8_t>(*y));
    ++row;
  }

  std::size_t imputed = 0;
  for (auto& [c, values] : raw) {
    std::vector<double> present;
    for (double v : values) {
      if (!std::isnan(v)) present.push_back(v);
    }
    if (present.size() == values.size()) continue;
    const double m = median(std::move(present));
    for (double& v : values) {
      if (std::isnan(v)) {
        v = m;
        ++imputed;
      }
    }
  }

  std::vector<core::FeatureMatrix> parties(layout.parties.size());
  for (std::size_t p = 0; p < layout.parties.size(); ++p) {
    for (std::size_t j = 0; j < party_cols[p].size(); ++j) {
      parties[p].names.push_back(layout.parties[p][j]);
      parties[p].columns.push_back(raw.at(party_cols[p][j]));
    }
  }
  std::vector<std::string> ids(row);
  for (std::size_t i = 0; i < row; ++i) ids[i] = std::to_string(i);
  if (stats != nullptr) *stats = {row, imputed};
  return core::VerticalDataset(std::move(ids), std::move(parties), std::move(labels));
}

void save_csv_vertical(const std::string& path, const core::VerticalDataset& data,
                       const ColumnLayout& layout) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  std::vector<std::string> names;
  for (const auto& cols : layout.parties) names.insert(names.end(), cols.begin(), cols.end());
  names.push_back(layout.label_column);
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < data.num_samples(); ++i) {
    bool first = true;
    for (core::PartyId p = 0; p < layout.parties.size(); ++p) {
      for (std::size_t k = 0; k < layout.parties[p].size(); ++k) {
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, data.party(p).at(i, k));
        out << (first ? "" : ",") << std::string_view(buf, static_cast<std::size_t>(end - buf));
        first = false;
      }
    }
    out << (first ? "" : ",") << static_cast<int>(data.labels()[i]) << '\n';
  }
  if (!out) throw UsageError("error writing " + path);
}

}  // namespace teeboost::bench
