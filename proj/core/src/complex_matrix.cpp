// SPDX-License-Identifier: Apache-2.0

#include "nhlattice/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nhlattice/errors.hpp"

namespace nhlattice {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major_entries)
    : dim_(dim), entries_(std::move(row_major_entries)) {
  if (entries_.size() != dim * dim) {
    throw ValidationError("ComplexMatrix: expected " + std::to_string(dim * dim) +
                          " entries, got " + std::to_string(entries_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t k) const {
  ComplexVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, k);
  return out;
}

ComplexVector ComplexMatrix::row(std::size_t k) const {
  return ComplexVector(entries_.begin() + static_cast<std::ptrdiff_t>(k * dim_),
                       entries_.begin() + static_cast<std::ptrdiff_t>((k + 1) * dim_));
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) throw ValidationError("ComplexMatrix::apply: size mismatch");
  ComplexVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexVector ComplexMatrix::apply_left(std::span<const Complex> u) const {
  if (u.size() != dim_) throw ValidationError("ComplexMatrix::apply_left: size mismatch");
  ComplexVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out[j] += u[i] * (*this)(i, j);
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  // Scaled accumulation: corner entries can reach e^60.
  double scale = 0.0;
  double ssq = 1.0;
  for (const Complex& z : entries_) {
    for (double part : {z.real(), z.imag()}) {
      const double a = std::abs(part);
      if (a == 0.0) continue;
      if (scale < a) {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      } else {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const Complex& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::min_nonzero_abs() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Complex& z : entries_) {
    const double a = std::abs(z);
    if (a > 0.0) m = std::min(m, a);
  }
  return std::isinf(m) ? 0.0 : m;
}

std::size_t ComplexMatrix::count_nonzero() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const Complex& z) { return z != 0.0; }));
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix product: dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix difference: dimension mismatch");
  ComplexMatrix c = a;
  auto out = c.entries();
  auto rhs = b.entries();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= rhs[i];
  return c;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).max_abs();
}

double norm2(std::span<const Complex> v) {
  double scale = 0.0;
  double ssq = 1.0;
  for (const Complex& z : v) {
    const double a = std::abs(z);
    if (a == 0.0) continue;
    if (scale < a) {
      ssq = 1.0 + ssq * (scale / a) * (scale / a);
      scale = a;
    } else {
      ssq += (a / scale) * (a / scale);
    }
  }
  return scale * std::sqrt(ssq);
}

Complex bilinear(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw ValidationError("bilinear: size mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
  return acc;
}

}  // namespace nhlattice
