// SPDX-License-Identifier: Apache-2.0

#include "nhlattice/assignment.hpp"

#include <algorithm>
#include <limits>

#include "nhlattice/errors.hpp"

namespace nhlattice {
namespace {

void check_shape(const CostMatrix& c) {
  if (c.cost.size() != c.n * c.n) throw ValidationError("CostMatrix: cost size != n*n");
}

// Kuhn augmenting path restricted to edges with cost <= threshold.
bool augment(const CostMatrix& c, double threshold, std::size_t row, std::vector<char>& seen,
             std::vector<std::ptrdiff_t>& row_of_col) {
  for (std::size_t col = 0; col < c.n; ++col) {
    if (seen[col] || c(row, col) > threshold) continue;
    seen[col] = 1;
    if (row_of_col[col] < 0 ||
        augment(c, threshold, static_cast<std::size_t>(row_of_col[col]), seen, row_of_col)) {
      row_of_col[col] = static_cast<std::ptrdiff_t>(row);
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const CostMatrix& c, double threshold) {
  std::vector<std::ptrdiff_t> row_of_col(c.n, -1);
  std::vector<char> seen(c.n);
  for (std::size_t row = 0; row < c.n; ++row) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(c, threshold, row, seen, row_of_col)) return false;
  }
  return true;
}

}  // namespace

std::vector<std::size_t> min_cost_assignment(const CostMatrix& c) {
  check_shape(c);
  const std::size_t n = c.n;
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials formulation; column 0 is a virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> col_of_row(n);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[row_of_col[j] - 1] = j - 1;
  return col_of_row;
}

double bottleneck_assignment(const CostMatrix& c) {
  check_shape(c);
  if (c.n == 0) return 0.0;
  std::vector<double> levels = c.cost;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::size_t lo = 0;
  std::size_t hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (has_perfect_matching(c, levels[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return levels[lo];
}

}  // namespace nhlattice
