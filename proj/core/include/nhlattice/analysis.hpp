// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "nhlattice/complex_matrix.hpp"
#include "nhlattice/model.hpp"

namespace nhlattice {

/// Swept coordinate. `rho` and `phi` vary the boundary family; `r` multiplies
/// alpha_L of the base parameters (alpha_L = r e^{qN/2}, alpha_R = e^{-qN/2}
/// for a rho = 1, phi = 0 base).
enum class Axis { rho, r, phi };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

struct SweepBase {
  int n_sites = 4;
  std::variant<BoundaryFamily, ModelParams> model = BoundaryFamily{};
};

/// Parameters at one grid value. phi values are wrapped into [0, 2pi).
ModelParams params_at(const SweepBase& base, Axis axis, double value);
ComplexMatrix matrix_at(const SweepBase& base, Axis axis, double value, Frame frame);

struct SweepOptions {
  Frame frame = Frame::bare;
  /// Bisection depth for steps whose matching is ambiguous.
  int max_refinement = 8;
  /// A branch step is unambiguous when its prediction residual is at most
  /// this fraction of the distance to the nearest competing eigenvalue.
  double continuity = 0.5;
  /// Eigenvalues closer than this (times scale) are treated as degenerate.
  double degeneracy_tolerance = 1e-6;
  int threads = 0;
};

struct SweepTrace {
  Axis axis = Axis::rho;
  std::vector<double> grid;
  /// trajectories[branch][point].
  std::vector<ComplexVector> trajectories;
  /// Per step: largest distance between predicted and matched eigenvalue.
  std::vector<double> match_cost;
  /// Per step: continuity could not be certified within max_refinement.
  std::vector<bool> degeneracy_flags;
  /// Per step: bisection depth actually used.
  std::vector<int> refinement_depth;
  /// degenerate[branch][point]: within tolerance of another eigenvalue.
  std::vector<std::vector<bool>> degenerate;
  std::vector<double> scales;

  std::size_t branch_count() const { return trajectories.size(); }
  ComplexVector at(std::size_t point) const;
};

/// Eigenvalues along a strictly monotone grid with branches matched by
/// optimal assignment against a secant prediction; ambiguous steps are bisected.
SweepTrace sweep(const SweepBase& base, Axis axis, std::vector<double> grid,
                 const SweepOptions& options = {});

/// Summed argument increments of a path about the origin, in radians.
double winding(std::span<const Complex> path);

inline constexpr double kRealityTolerance = 1e-9;

struct RealityCheck {
  bool is_real = true;
  double max_imag = 0.0;
};

/// is_real iff max |Im λ| < 1e-9 · scale.
RealityCheck reality_check(std::span<const Complex> eigenvalues, double scale);

enum class EPClass { exceptional, diabolic_or_ordinary_crossing, none };
std::string_view to_string(EPClass c);

/// Coalescence threshold relative to scale for an m-fold cluster:
/// max(1e-6, 10 eps^{1/m}). Double precision resolves an m-fold Jordan
/// block only to ~eps^{1/m}.
double coalescence_radius(int multiplicity);

struct EPReport {
  double parameter_value = 0.0;
  double min_gap = 0.0;
  double cond_v_at_point = 0.0;
  /// Δ of the closed-form four-site spectrum, only for N = 4.
  std::optional<Complex> delta_value;
  EPClass classification = EPClass::none;
  int cluster_size = 0;
  /// Null-space dimension of (M − μ I) at the cluster centre μ.
  int geometric_multiplicity = 0;
  double cluster_diameter = 0.0;
  Complex cluster_center = 0.0;
  double scale = 1.0;
};

struct EPOptions {
  int coarse_steps = 400;
  double parameter_tolerance = 1e-10;
  Frame frame = Frame::bare;
  int threads = 0;
  /// Also return gap minima that do not coalesce (classification none).
  bool include_avoided = false;
};

/// Coarse scan of the coalescence gap, golden-section refinement of each
/// local minimum, then classification at the refined parameter.
std::vector<EPReport> find_exceptional_points(const SweepBase& base, Axis axis, double lo,
                                              double hi, const EPOptions& options = {});

/// Parameters in [lo, hi] where reality_check flips, bisected to `tolerance`.
std::vector<double> reality_transitions(const SweepBase& base, Axis axis, double lo, double hi,
                                        int steps, double tolerance, Frame frame = Frame::bare,
                                        int threads = 0);

}  // namespace nhlattice
