// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "nhlattice/complex_matrix.hpp"

namespace nhlattice {

/// cond_v at or above this marks the eigenvector basis as unreliable.
inline constexpr double kDefectiveCondition = 1e12;

/// Result of diagonal balancing: matrix = D^{-1} M D with D = diag(scaling),
/// every scaling entry an exact power of two.
struct BalancedMatrix {
  ComplexMatrix matrix;
  std::vector<double> scaling;
};

/// Parlett-Reinsch style iterative radix-2 balancing of off-diagonal row and
/// column 2-norms. Rows or columns with a zero off-diagonal norm are left alone.
BalancedMatrix balance(const ComplexMatrix& m);

/// Complex Schur form B = Q T Q^H with T upper triangular.
struct SchurForm {
  ComplexMatrix t;
  ComplexMatrix q;
  int sweeps = 0;
};

/// Householder reduction to Hessenberg form followed by single-shift implicit
/// QR with deflation. Throws NumericalError after 30·N sweeps; `label` is
/// included in the message.
SchurForm schur_decompose(const ComplexMatrix& m, const std::string& label = {});

struct EigenOptions {
  bool balance = true;
  /// Identifies the matrix in failure messages.
  std::string label;
};

struct EigenSystem {
  /// Sorted by (Re, Im).
  ComplexVector eigenvalues;
  /// Column k is the unit-norm right eigenvector of eigenvalues[k].
  ComplexMatrix right_vectors;
  /// Row k is the unit-norm left eigenvector (u M = lambda u) of eigenvalues[k].
  ComplexMatrix left_vectors;
  /// ‖M v_k − λ_k v_k‖₂ / ‖M‖_F per k.
  std::vector<double> residuals;
  double max_residual = 0.0;
  double max_left_residual = 0.0;
  /// 2-norm condition number of the right eigenvector matrix; +inf if singular.
  double cond_v = 1.0;
  /// max(1, ‖balanced M‖_F); the reference magnitude for spectral tolerances.
  double scale = 1.0;
  bool balanced = false;
  int qr_sweeps = 0;

  std::size_t size() const { return eigenvalues.size(); }
  bool defective() const { return !(cond_v < kDefectiveCondition); }
  ComplexVector right(std::size_t k) const { return right_vectors.column(k); }
  ComplexVector left(std::size_t k) const { return left_vectors.row(k); }
};

EigenSystem eigensystem(const ComplexMatrix& m, const EigenOptions& options = {});

/// Within clusters of eigenvalues closer than tolerance·scale, replaces the
/// arbitrary basis by the one that diagonalizes `splitting` restricted to the
/// cluster (first-order degenerate perturbation theory). Defective clusters
/// and clusters the splitting does not separate are left as they are.
EigenSystem resolve_degenerate(const ComplexMatrix& m, EigenSystem es,
                               const ComplexMatrix& splitting, double tolerance = 1e-8);

/// Eigenvalues only (same balancing and QR path, no vectors), sorted by (Re, Im).
ComplexVector eigenvalues(const ComplexMatrix& m, const EigenOptions& options = {});

/// max(1, ‖balance(m)‖_F).
double spectral_scale(const ComplexMatrix& m);

/// Lexicographic (Re, Im) ordering used for presentation.
void sort_eigenvalues(ComplexVector& values);

/// Singular values in descending order (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& m);

/// σ_max / σ_min in the 2-norm; +inf for singular input.
double condition_number(const ComplexMatrix& m);

/// Bottleneck distance between two eigenvalue multisets: the minimum over
/// pairings of the largest paired |a_i − b_j|. Throws on length mismatch.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

/// min_{i<j} |λ_i − λ_j|; +inf for fewer than two values.
double min_pairwise_gap(std::span<const Complex> values);

}  // namespace nhlattice
