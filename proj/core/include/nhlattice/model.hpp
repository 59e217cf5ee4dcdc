// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "nhlattice/complex_matrix.hpp"

namespace nhlattice {

/// Corner entries grow like e^{rho Re(q) N / 2}; |Re(q)|·N above this bound is
/// rejected so that rho in [0, 2] keeps every entry below e^60.
inline constexpr double kRangeGuard = 60.0;

bool within_range_guard(int n_sites, Complex q);
/// Throws ValidationError naming the offending product |Re(q)|·N.
void check_range_guard(int n_sites, Complex q);

/// Authoritative (q, t) pair carried by parameters expanded from a
/// BoundaryFamily. The rho-parametrization is not invariant under
/// q -> q + 2 pi i, so the user's q wins over Log(t_R / t_L).
struct Gauge {
  Complex q;
  Complex t;
};

/// Direct lattice parameters of the Hatano-Nelson chain with a boundary link.
struct ModelParams {
  int n_sites = 2;
  Complex t_left = 1.0;
  Complex t_right = 1.0;
  Complex alpha_left = 0.0;
  Complex alpha_right = 0.0;
  std::optional<Gauge> gauge;

  /// Principal Log(t_R / t_L) unless a gauge was supplied.
  Complex q() const;
  /// t_R e^{-q/2}, a square root of t_L t_R, unless a gauge was supplied.
  Complex t() const;

  /// Throws ValidationError on n_sites < 2, zero or non-finite hoppings and
  /// non-finite boundary coefficients.
  void validate() const;

  static ModelParams open_chain(int n_sites, Complex t_left, Complex t_right);
};

/// The one-parameter boundary family alpha_L = 1/alpha_R = e^{i phi} e^{rho q N / 2},
/// with hoppings t_L = t e^{-q/2}, t_R = t e^{q/2}.
struct BoundaryFamily {
  double rho = 1.0;
  double phi = 0.0;
  Complex q = 0.0;
  Complex t = 1.0;

  Complex alpha_left(int n_sites) const;
  void validate(int n_sites) const;
  ModelParams expand(int n_sites) const;
};

/// Which of the two isospectral Hamiltonians is meant.
enum class Frame { bare, transformed };

/// Hamiltonian H in the site basis. Row = creation index, column = annihilation
/// index: H(n, n+1) = t_R, H(n+1, n) = t_L, H(N, 1) = alpha_R t_R,
/// H(1, N) = alpha_L t_L (1-based). For N = 2 bulk and boundary links add.
ComplexMatrix build_hamiltonian(const ModelParams& p);

/// Gauge-transformed partner: symmetric bulk hopping t, corners
/// (N, 1) = t alpha_R e^{qN/2} and (1, N) = t alpha_L e^{-qN/2}.
ComplexMatrix build_transformed(const ModelParams& p);

/// build_hamiltonian or build_transformed.
ComplexMatrix build_matrix(const ModelParams& p, Frame frame);

/// Derivative of the matrix with respect to a boundary twist
/// alpha_L -> alpha_L e^{i d}, alpha_R -> alpha_R e^{-i d}, at d = 0.
/// Lifts the ±k degeneracies of twist-free rings.
ComplexMatrix twist_generator(const ModelParams& p, Frame frame);

/// Diagonal S with S[n] = e^{q n / 2}, n = 1..N, so that S H S^{-1} = H̃.
ComplexVector gauge_scaling(int n_sites, Complex q);

/// Applies diag(left) · m · diag(right).
ComplexMatrix scale_rows_cols(const ComplexMatrix& m, std::span<const Complex> left,
                              std::span<const Complex> right);

/// P · M^† · P with P the site reflection n -> N+1-n.
ComplexMatrix pt_conjugate(const ComplexMatrix& m);

/// P · M · P.
ComplexMatrix space_inversion(const ComplexMatrix& m);

}  // namespace nhlattice
