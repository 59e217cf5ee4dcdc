// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "nhlattice/eig.hpp"

namespace nhlattice {

BalancedMatrix balance(const ComplexMatrix& m) {
  constexpr double kRadix = 2.0;
  constexpr double kFactor = 0.95;
  const double sfmin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  const double sfmax = 1.0 / sfmin;

  BalancedMatrix out{m, std::vector<double>(m.dim(), 1.0)};
  ComplexMatrix& b = out.matrix;
  const std::size_t n = b.dim();
  if (n < 2) return out;

  bool converged = false;
  // Each accepted rescaling strictly decreases c + r; the cap only guards
  // against pathological input.
  for (int sweep = 0; sweep < 1000 && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i) continue;
        c += std::norm(b(k, i));
        r += std::norm(b(i, k));
      }
      c = std::sqrt(c);
      r = std::sqrt(r);
      if (c == 0.0 || r == 0.0) continue;

      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g && f < sfmax && c < sfmax && r > sfmin) {
        f *= kRadix;
        c *= kRadix;
        r /= kRadix;
        g /= kRadix;
      }
      g = c / kRadix;
      while (g >= r && f > sfmin && r < sfmax) {
        f /= kRadix;
        c /= kRadix;
        g /= kRadix;
        r *= kRadix;
      }
      if (c + r >= kFactor * s) continue;
      if (f < 1.0 && out.scaling[i] < 1.0 && f * out.scaling[i] <= sfmin) continue;
      if (f > 1.0 && out.scaling[i] > 1.0 && out.scaling[i] >= sfmax / f) continue;

      converged = false;
      out.scaling[i] *= f;
      const double inv = 1.0 / f;
      for (std::size_t k = 0; k < n; ++k) {
        b(i, k) *= inv;
        b(k, i) *= f;
      }
    }
  }
  return out;
}

}  // namespace nhlattice
