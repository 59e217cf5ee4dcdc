// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nhlattice {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix, row-major. Indices are 0-based; lattice site
/// n (1-based in the physics notation) lives at index n-1.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major_entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  /// Column k as a freshly allocated vector.
  ComplexVector column(std::size_t k) const;
  ComplexVector row(std::size_t k) const;

  /// M·v for a column vector v.
  ComplexVector apply(std::span<const Complex> v) const;
  /// u·M for a row vector u.
  ComplexVector apply_left(std::span<const Complex> u) const;

  ComplexMatrix transpose() const;
  ComplexMatrix adjoint() const;

  double frobenius_norm() const;
  double max_abs() const;
  /// Smallest nonzero |entry|; 0 when the matrix is identically zero.
  double min_nonzero_abs() const;
  std::size_t count_nonzero() const;
  bool all_finite() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |a_ij - b_ij|; dimensions must agree.
double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(std::span<const Complex> v);
/// Unbarred bilinear product sum_n u_n v_n (left-right pairing, no conjugation).
Complex bilinear(std::span<const Complex> u, std::span<const Complex> v);

}  // namespace nhlattice
