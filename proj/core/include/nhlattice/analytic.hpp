// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "nhlattice/complex_matrix.hpp"
#include "nhlattice/model.hpp"

namespace nhlattice {

/// Quantized momenta k_m = (phi + 2 pi m)/N + (i/2)(1 - rho) q, m = 0..N-1.
struct MomentumSet {
  std::vector<Complex> momenta;
  double rho = 0.0;
  double phi = 0.0;
  Complex q = 0.0;
  int n_sites = 0;
};

/// Throws NumericalError if the boundary condition
/// e^{rho q N/2 + i phi} = e^{q N/2 + i k N} fails the 1e-12 self-check.
MomentumSet momenta(const BoundaryFamily& family, int n_sites);

/// E_m = 2 t cos(k_m), indexed by m (not sorted).
ComplexVector spectrum_closed_form(const BoundaryFamily& family, int n_sites);

enum class Side { right, left };
/// bare: eigenmodes of H; tilde: eigenmodes of the gauge-transformed H̃.
enum class Basis { bare, tilde };

/// Unnormalized closed-form eigenmode, sites n = 1..N:
///   right/bare  v_n = e^{-qn/2} e^{-ikn},  left/bare  u_n = e^{+qn/2} e^{+ikn};
/// the tilde variants drop the e^{±qn/2} envelope.
ComplexVector eigenmode_closed_form(Complex k, Complex q, int n_sites, Side which, Basis basis);

/// Copy scaled to unit 2-norm.
ComplexVector normalized(std::span<const Complex> v);

/// {2 t cos(pi m / (N + 1)) : m = 1..N}.
ComplexVector spectrum_obc(int n_sites, Complex t);

struct N4Spectrum {
  /// ±(t/√2)·sqrt(α² + 3 ± sqrt(Δ)), order (+,+), (+,−), (−,+), (−,−) with the
  /// outer sign first.
  std::array<Complex, 4> energies;
  Complex delta;
  Complex alpha_sq;
};

/// Closed form for the four-site ring with general boundary link.
N4Spectrum spectrum_n4(Complex t, Complex q, Complex alpha_left, Complex alpha_right);

}  // namespace nhlattice
