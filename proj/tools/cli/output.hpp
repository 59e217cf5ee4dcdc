// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nhlattice/complex_matrix.hpp"

namespace nhlattice::cli {

using MetaValue = std::variant<std::string, double, long long, bool, Complex>;
/// Empty cell (monostate) marks an absent value, e.g. Δ for N != 4.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::string command;
  std::vector<std::pair<std::string, MetaValue>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// "# key=value" block, header row, then one line per row.
void write_csv(const Table& table, std::ostream& os);
/// {"metadata": {...}, "columns": [...], "rows": [{...}]}.
void write_json(const Table& table, std::ostream& os);

}  // namespace nhlattice::cli
