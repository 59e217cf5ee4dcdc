// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nhlattice/analysis.hpp"
#include "nhlattice/analytic.hpp"
#include "nhlattice/eig.hpp"
#include "nhlattice/errors.hpp"
#include "nhlattice/parallel.hpp"

namespace nhlattice {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kGapFloor = 1e-6;

struct Pair {
  double gap;
  std::size_t a;
  std::size_t b;
};

std::vector<Pair> sorted_pairs(std::span<const Complex> values) {
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      pairs.push_back({std::abs(values[i] - values[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.gap < y.gap; });
  return pairs;
}

struct GapSample {
  double gap = 0.0;  // relative to scale
  std::size_t tight = 0;
};

// `skip` pairs that stay coalesced over most of the range are stepped over so a
// persistent degeneracy does not hide the minimum of the next-closest pair.
class GapFunction {
 public:
  GapFunction(const SweepBase& base, Axis axis, Frame frame)
      : base_(base), axis_(axis), frame_(frame) {}

  GapSample sample(double p, std::size_t skip) const {
    const ComplexMatrix m = matrix_at(base_, axis_, p, frame_);
    const ComplexVector values = eigenvalues(m);
    const double scale = spectral_scale(m);
    const std::vector<Pair> pairs = sorted_pairs(values);
    GapSample s;
    for (const Pair& pr : pairs)
      if (pr.gap < kGapFloor * scale) ++s.tight;
    s.gap = pairs.empty() ? std::numeric_limits<double>::infinity()
                          : pairs[std::min(skip, pairs.size() - 1)].gap / scale;
    return s;
  }

 private:
  const SweepBase& base_;
  Axis axis_;
  Frame frame_;
};

double golden_minimum(const GapFunction& g, std::size_t skip, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g.sample(x1, skip).gap;
  double f2 = g.sample(x2, skip).gap;
  double best_x = f1 < f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  for (int iter = 0; iter < 200; ++iter) {
    if (b - a <= 4.0 * kEps * std::max(1.0, std::abs(best_x))) break;
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g.sample(x1, skip).gap;
      if (f1 < best_f) best_f = f1, best_x = x1;
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g.sample(x2, skip).gap;
      if (f2 < best_f) best_f = f2, best_x = x2;
    }
  }
  return best_x;
}

std::size_t null_dimension(const ComplexMatrix& balanced, Complex mu, double tol) {
  ComplexMatrix shifted = balanced;
  for (std::size_t i = 0; i < shifted.dim(); ++i) shifted(i, i) -= mu;
  const std::vector<double> sv = singular_values(shifted);
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [tol](double s) { return s <= tol; }));
}

EPReport classify(const SweepBase& base, Axis axis, double p, Frame frame, std::size_t skip) {
  const ModelParams params = params_at(base, axis, p);
  const ComplexMatrix m = build_matrix(params, frame);
  const EigenSystem es = eigensystem(m);
  const std::vector<Pair> pairs = sorted_pairs(es.eigenvalues);

  EPReport report;
  report.parameter_value = p;
  report.cond_v_at_point = es.cond_v;
  report.scale = es.scale;
  if (params.n_sites == 4) {
    report.delta_value =
        spectrum_n4(params.t(), params.q(), params.alpha_left, params.alpha_right).delta;
  }
  if (pairs.empty()) return report;
  const Pair& seed = pairs[std::min(skip, pairs.size() - 1)];
  report.min_gap = min_pairwise_gap(es.eigenvalues);

  // Largest set of eigenvalues nearest the seed that is tight enough for its
  // multiplicity and well separated from the rest of the spectrum.
  const Complex seed_center = 0.5 * (es.eigenvalues[seed.a] + es.eigenvalues[seed.b]);
  std::vector<std::size_t> order(es.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::abs(es.eigenvalues[x] - seed_center) < std::abs(es.eigenvalues[y] - seed_center);
  });
  std::size_t chosen = 2;
  bool coalesced = false;
  Complex center = seed_center;
  double diameter = seed.gap;
  for (std::size_t m = 2; m <= es.size(); ++m) {
    Complex c = 0.0;
    for (std::size_t k = 0; k < m; ++k) c += es.eigenvalues[order[k]];
    c /= static_cast<double>(m);
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        d = std::max(d, std::abs(es.eigenvalues[order[i]] - es.eigenvalues[order[j]]));
    const bool tight = d <= coalescence_radius(static_cast<int>(m)) * es.scale;
    const bool separated = m == es.size() || std::abs(es.eigenvalues[order[m]] - c) > 3.0 * d;
    if (tight && separated) {
      chosen = m;
      coalesced = true;
      center = c;
      diameter = d;
    }
  }

  const int size = static_cast<int>(chosen);
  report.cluster_size = size;
  report.cluster_diameter = diameter;
  report.cluster_center = center;
  const double null_tol =
      coalesced ? std::max(10.0 * diameter, std::sqrt(kEps) * es.scale) : std::sqrt(kEps) * es.scale;
  report.geometric_multiplicity =
      static_cast<int>(null_dimension(balance(m).matrix, center, null_tol));
  if (!coalesced) {
    report.classification = EPClass::none;
  } else if (es.cond_v >= kDefectiveCondition || report.geometric_multiplicity < size) {
    report.classification = EPClass::exceptional;
  } else {
    report.classification = EPClass::diabolic_or_ordinary_crossing;
  }
  return report;
}

}  // namespace

std::string_view to_string(EPClass c) {
  switch (c) {
    case EPClass::exceptional:
      return "exceptional";
    case EPClass::diabolic_or_ordinary_crossing:
      return "diabolic_or_ordinary_crossing";
    case EPClass::none:
      return "none";
  }
  return "none";
}

double coalescence_radius(int multiplicity) {
  const int m = std::max(multiplicity, 2);
  return std::max(kGapFloor, 10.0 * std::pow(kEps, 1.0 / m));
}

std::vector<EPReport> find_exceptional_points(const SweepBase& base, Axis axis, double lo,
                                              double hi, const EPOptions& options) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ValidationError("ep scan: need finite lo < hi");
  }
  if (options.coarse_steps < 2) throw ValidationError("ep scan: need at least 2 steps");
  const std::size_t points = static_cast<std::size_t>(options.coarse_steps) + 1;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  grid.back() = hi;
  for (double g : grid) (void)params_at(base, axis, g);

  const GapFunction gap(base, axis, options.frame);
  std::vector<GapSample> coarse(points);
  // First pass only counts persistently coalesced pairs.
  parallel_for(
      points, [&](std::size_t i) { coarse[i] = gap.sample(grid[i], 0); }, options.threads);
  // Median rather than minimum: near a higher-order coalescence the persistent
  // pair itself spreads beyond the tight threshold.
  std::vector<std::size_t> tight(points);
  for (std::size_t i = 0; i < points; ++i) tight[i] = coarse[i].tight;
  std::nth_element(tight.begin(), tight.begin() + (points - 1) / 2, tight.end());
  const std::size_t skip = tight[(points - 1) / 2];
  if (skip > 0) {
    parallel_for(
        points, [&](std::size_t i) { coarse[i] = gap.sample(grid[i], skip); }, options.threads);
  }

  std::vector<EPReport> reports;
  for (std::size_t i = 1; i + 1 < points; ++i) {
    if (!(coarse[i].gap < coarse[i - 1].gap && coarse[i].gap <= coarse[i + 1].gap)) continue;
    const double p = golden_minimum(gap, skip, grid[i - 1], grid[i + 1]);
    const bool duplicate = std::any_of(reports.begin(), reports.end(), [&](const EPReport& r) {
      return std::abs(r.parameter_value - p) <= options.parameter_tolerance;
    });
    if (duplicate) continue;
    EPReport report = classify(base, axis, p, options.frame, skip);
    if (report.classification == EPClass::none && !options.include_avoided) continue;
    reports.push_back(report);
  }
  return reports;
}

std::vector<double> reality_transitions(const SweepBase& base, Axis axis, double lo, double hi,
                                        int steps, double tolerance, Frame frame, int threads) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi) || steps < 1 || !(tolerance > 0)) {
    throw ValidationError("reality_transitions: need finite lo < hi, steps >= 1, tolerance > 0");
  }
  auto is_real = [&](double p) {
    const ComplexMatrix m = matrix_at(base, axis, p, frame);
    return reality_check(eigenvalues(m), spectral_scale(m)).is_real;
  };
  const std::size_t points = static_cast<std::size_t>(steps) + 1;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
  }
  grid.back() = hi;
  std::vector<char> real(points);
  parallel_for(points, [&](std::size_t i) { real[i] = is_real(grid[i]); }, threads);

  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < points; ++i) {
    if (real[i] == real[i + 1]) continue;
    double a = grid[i];
    double b = grid[i + 1];
    while (b - a > tolerance) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      (is_real(mid) == static_cast<bool>(real[i]) ? a : b) = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace nhlattice
