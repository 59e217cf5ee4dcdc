// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nhlattice/analysis.hpp"
#include "nhlattice/assignment.hpp"
#include "nhlattice/eig.hpp"
#include "nhlattice/errors.hpp"
#include "nhlattice/parallel.hpp"

namespace nhlattice {
namespace {

struct Spectrum {
  ComplexVector values;
  double scale = 1.0;
};

Spectrum spectrum_at(const SweepBase& base, Axis axis, double value, Frame frame) {
  const ComplexMatrix m = matrix_at(base, axis, value, frame);
  return {eigenvalues(m), spectral_scale(m)};
}

// A point on a branch-ordered path, plus the one before it for the predictor.
struct PathState {
  double param = 0.0;
  ComplexVector values;
  std::optional<double> prev_param;
  ComplexVector prev_values;
};

struct StepResult {
  ComplexVector values;
  double cost = 0.0;
  bool unresolved = false;
  int depth = 0;
  // Last sub-point before the target, for the next predictor.
  double last_param = 0.0;
  ComplexVector last_values;
};

class Matcher {
 public:
  Matcher(const SweepBase& base, Axis axis, const SweepOptions& options)
      : base_(base), axis_(axis), options_(options) {}

  StepResult advance(const PathState& from, double target, const Spectrum& at_target,
                     int depth) const {
    const std::size_t n = from.values.size();
    ComplexVector predicted = from.values;
    if (from.prev_param && *from.prev_param != from.param) {
      const double ratio = (target - from.param) / (from.param - *from.prev_param);
      for (std::size_t i = 0; i < n; ++i) {
        predicted[i] += (from.values[i] - from.prev_values[i]) * ratio;
      }
    }
    CostMatrix cost{n, std::vector<double>(n * n)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cost.cost[i * n + j] = std::abs(predicted[i] - at_target.values[j]);
    const std::vector<std::size_t> col = min_cost_assignment(cost);

    StepResult result;
    result.values.resize(n);
    result.depth = depth;
    result.last_param = from.param;
    result.last_values = from.values;
    bool ambiguous = false;
    const double floor = options_.degeneracy_tolerance * at_target.scale;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex matched = at_target.values[col[i]];
      result.values[i] = matched;
      const double residual = std::abs(matched - predicted[i]);
      result.cost = std::max(result.cost, residual);
      double spacing = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != col[i]) spacing = std::min(spacing, std::abs(at_target.values[j] - matched));
      }
      // Members of a degenerate cluster are interchangeable; bisection cannot
      // separate them.
      if (residual > options_.continuity * spacing && spacing >= floor) ambiguous = true;
    }
    if (!ambiguous) return result;
    if (depth >= options_.max_refinement) {
      result.unresolved = true;
      return result;
    }

    const double mid = 0.5 * (from.param + target);
    const Spectrum at_mid = spectrum_at(base_, axis_, mid, options_.frame);
    const StepResult first = advance(from, mid, at_mid, depth + 1);
    PathState middle{mid, first.values, from.param, from.values};
    StepResult second = advance(middle, target, at_target, depth + 1);
    second.cost = std::max(first.cost, second.cost);
    second.unresolved = first.unresolved || second.unresolved;
    second.depth = std::max(first.depth, second.depth);
    return second;
  }

 private:
  const SweepBase& base_;
  Axis axis_;
  const SweepOptions& options_;
};

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::rho:
      return "rho";
    case Axis::r:
      return "r";
    case Axis::phi:
      return "phi";
  }
  return "rho";
}

Axis parse_axis(std::string_view text) {
  if (text == "rho") return Axis::rho;
  if (text == "r") return Axis::r;
  if (text == "phi") return Axis::phi;
  throw ValidationError("unknown axis '" + std::string(text) + "' (expected rho, r or phi)");
}

ModelParams params_at(const SweepBase& base, Axis axis, double value) {
  if (!std::isfinite(value)) throw ValidationError("sweep parameter must be finite");
  if (const auto* family = std::get_if<BoundaryFamily>(&base.model)) {
    BoundaryFamily f = *family;
    switch (axis) {
      case Axis::rho:
        f.rho = value;
        return f.expand(base.n_sites);
      case Axis::phi: {
        constexpr double kTwoPi = 2.0 * std::numbers::pi;
        double wrapped = std::fmod(value, kTwoPi);
        if (wrapped < 0.0) wrapped += kTwoPi;
        if (wrapped >= kTwoPi) wrapped = 0.0;
        f.phi = wrapped;
        return f.expand(base.n_sites);
      }
      case Axis::r: {
        ModelParams p = f.expand(base.n_sites);
        p.alpha_left *= value;
        return p;
      }
    }
  }
  const ModelParams& tmpl = std::get<ModelParams>(base.model);
  if (axis != Axis::r) {
    throw ValidationError("axis '" + std::string(to_string(axis)) +
                          "' requires a boundary-family base");
  }
  ModelParams p = tmpl;
  p.n_sites = base.n_sites;
  p.alpha_left *= value;
  p.validate();
  return p;
}

ComplexMatrix matrix_at(const SweepBase& base, Axis axis, double value, Frame frame) {
  const ModelParams p = params_at(base, axis, value);
  return build_matrix(p, frame);
}

ComplexVector SweepTrace::at(std::size_t point) const {
  ComplexVector out;
  out.reserve(trajectories.size());
  for (const auto& branch : trajectories) out.push_back(branch.at(point));
  return out;
}

SweepTrace sweep(const SweepBase& base, Axis axis, std::vector<double> grid,
                 const SweepOptions& options) {
  if (grid.size() < 2) throw ValidationError("sweep: grid needs at least 2 points");
  const bool increasing = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(increasing ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1])) {
      throw ValidationError("sweep: grid must be strictly monotone");
    }
  }
  // Fail fast on invalid parameters before spawning work.
  for (double g : grid) (void)params_at(base, axis, g);

  std::vector<Spectrum> spectra(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) { spectra[i] = spectrum_at(base, axis, grid[i], options.frame); },
      options.threads);

  const std::size_t n = spectra.front().values.size();
  const std::size_t points = grid.size();
  SweepTrace trace;
  trace.axis = axis;
  trace.grid = grid;
  trace.trajectories.assign(n, ComplexVector(points));
  trace.degenerate.assign(n, std::vector<bool>(points, false));
  trace.match_cost.assign(points - 1, 0.0);
  trace.degeneracy_flags.assign(points - 1, false);
  trace.refinement_depth.assign(points - 1, 0);
  trace.scales.resize(points);

  const Matcher matcher(base, axis, options);
  PathState state{grid[0], spectra[0].values, std::nullopt, {}};
  for (std::size_t b = 0; b < n; ++b) trace.trajectories[b][0] = state.values[b];
  for (std::size_t s = 0; s + 1 < points; ++s) {
    const StepResult step = matcher.advance(state, grid[s + 1], spectra[s + 1], 0);
    for (std::size_t b = 0; b < n; ++b) trace.trajectories[b][s + 1] = step.values[b];
    trace.match_cost[s] = step.cost;
    trace.degeneracy_flags[s] = step.unresolved;
    trace.refinement_depth[s] = step.depth;
    state = PathState{grid[s + 1], step.values, step.last_param, step.last_values};
  }

  for (std::size_t p = 0; p < points; ++p) {
    trace.scales[p] = spectra[p].scale;
    const double tol = options.degeneracy_tolerance * spectra[p].scale;
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c != b && std::abs(trace.trajectories[b][p] - trace.trajectories[c][p]) < tol) {
          trace.degenerate[b][p] = true;
          break;
        }
      }
    }
  }
  return trace;
}

double winding(std::span<const Complex> path) {
  double total = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] == 0.0) throw ValidationError("winding: path passes through the origin");
    if (i > 0) total += std::arg(path[i] / path[i - 1]);
  }
  return total;
}

RealityCheck reality_check(std::span<const Complex> eigenvalues, double scale) {
  RealityCheck out;
  for (const Complex& z : eigenvalues) out.max_imag = std::max(out.max_imag, std::abs(z.imag()));
  out.is_real = out.max_imag < kRealityTolerance * scale;
  return out;
}

}  // namespace nhlattice
