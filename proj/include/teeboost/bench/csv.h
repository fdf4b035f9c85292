#ifndef TEEBOOST_BENCH_CSV_H_
#define TEEBOOST_BENCH_CSV_H_

#include <cstddef>
#include <string>
#include <vector>

#include "teeboost/core/dataset.h"

namespace teeboost::bench {

// Which CSV columns go to which party; parties[0] is the active party.
struct ColumnLayout {
  std::string label_column;
  std::vector<std::vector<std::string>> parties;
};

struct LoadStats {
  std::size_t rows = 0;
  std::size_t imputed_cells = 0;
};

// Header row required. Empty or "NA" cells are replaced by the column median
// of the present cells. Row index becomes the sample id. ConfigError for a
// configured column missing from the header; UsageError naming line and
// column for a non-numeric cell or a label outside {0, 1}.
core::VerticalDataset load_csv_vertical(const std::string& path, const ColumnLayout& layout,
                                        LoadStats* stats = nullptr);

// Writes every party's columns and the label, in layout order, with
// round-trip precision.
void save_csv_vertical(const std::string& path, const core::VerticalDataset& data,
                       const ColumnLayout& layout);

// Splits one CSV record; double quotes group and a backslash escapes.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace teeboost::bench

#endif  // TEEBOOST_BENCH_CSV_H_
