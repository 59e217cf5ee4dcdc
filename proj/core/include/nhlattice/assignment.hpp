// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nhlattice {

/// Row-major n×n cost matrix.
struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> cost;

  double operator()(std::size_t row, std::size_t col) const { return cost[row * n + col]; }
};

/// Minimum-sum assignment (Hungarian algorithm with potentials, O(n^3)).
/// Returns col_of_row: row i is matched to column col_of_row[i].
std::vector<std::size_t> min_cost_assignment(const CostMatrix& c);

/// Minimum over perfect matchings of the maximum matched cost.
double bottleneck_assignment(const CostMatrix& c);

}  // namespace nhlattice
