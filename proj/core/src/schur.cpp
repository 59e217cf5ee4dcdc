// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nhlattice/eig.hpp"
#include "nhlattice/errors.hpp"

namespace nhlattice {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

// G = [[c, s], [-conj(s), c]] with G·[p; q] = [r; 0].
struct Givens {
  double c = 1.0;
  Complex s = 0.0;
};

Givens make_givens(Complex p, Complex q) {
  if (q == 0.0) return {1.0, 0.0};
  if (p == 0.0) return {0.0, std::conj(q) / std::abs(q)};
  const double ap = std::abs(p);
  const double nu = std::hypot(ap, std::abs(q));
  return {ap / nu, (p / ap) * std::conj(q) / nu};
}

// Rows i, j of m, columns [col_begin, n).
void rotate_rows(ComplexMatrix& m, std::size_t i, std::size_t j, const Givens& g,
                 std::size_t col_begin) {
  for (std::size_t k = col_begin; k < m.dim(); ++k) {
    const Complex x = m(i, k);
    const Complex y = m(j, k);
    m(i, k) = g.c * x + g.s * y;
    m(j, k) = -std::conj(g.s) * x + g.c * y;
  }
}

// Columns i, j of m multiplied on the right by G^H, rows [0, row_end].
void rotate_cols(ComplexMatrix& m, std::size_t i, std::size_t j, const Givens& g,
                 std::size_t row_end) {
  for (std::size_t k = 0; k <= row_end && k < m.dim(); ++k) {
    const Complex x = m(k, i);
    const Complex y = m(k, j);
    m(k, i) = g.c * x + std::conj(g.s) * y;
    m(k, j) = -g.s * x + g.c * y;
  }
}

void reduce_to_hessenberg(ComplexMatrix& a, ComplexMatrix& q) {
  const std::size_t n = a.dim();
  if (n < 3) return;
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double tail = 0.0;
    for (std::size_t i = 1; i < len; ++i) tail = std::max(tail, std::abs(a(k + 1 + i, k)));
    if (tail == 0.0) continue;

    std::span<Complex> x(v.data(), len);
    for (std::size_t i = 0; i < len; ++i) x[i] = a(k + 1 + i, k);
    const double xnorm = norm2(x);
    const Complex x0 = x[0];
    const Complex phase = (x0 == 0.0) ? Complex(1.0) : x0 / std::abs(x0);
    const Complex beta = -phase * xnorm;
    x[0] -= beta;
    const double vnorm = norm2(x);
    for (auto& z : x) z /= vnorm;  // H = I - 2 v v^H

    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < len; ++i) s += std::conj(x[i]) * a(k + 1 + i, j);
      s *= 2.0;
      for (std::size_t i = 0; i < len; ++i) a(k + 1 + i, j) -= x[i] * s;
    }
    for (ComplexMatrix* m : {&a, &q}) {
      for (std::size_t r = 0; r < n; ++r) {
        Complex s = 0.0;
        for (std::size_t i = 0; i < len; ++i) s += (*m)(r, k + 1 + i) * x[i];
        s *= 2.0;
        for (std::size_t i = 0; i < len; ++i) (*m)(r, k + 1 + i) -= s * std::conj(x[i]);
      }
    }
    a(k + 1, k) = beta;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Zeroes T(k+1, k) and returns true when it is negligible.
bool deflate_if_negligible(ComplexMatrix& t, std::size_t k, double norm) {
  const double sub = abs1(t(k + 1, k));
  double ref = abs1(t(k, k)) + abs1(t(k + 1, k + 1));
  if (ref == 0.0) ref = norm;
  if (sub <= kEps * ref || sub <= std::numeric_limits<double>::min()) {
    t(k + 1, k) = 0.0;
    return true;
  }
  return false;
}

Complex wilkinson_shift(const ComplexMatrix& t, std::size_t iu, int iter) {
  if (iter % 10 == 0) {
    // Ad-hoc shift (EISPACK comqr) to break cycles.
    double s = std::abs(t(iu, iu - 1).real());
    if (iu >= 2) s += std::abs(t(iu - 1, iu - 2).real());
    return s;
  }
  const Complex a = t(iu - 1, iu - 1);
  const Complex b = t(iu - 1, iu);
  const Complex c = t(iu, iu - 1);
  const Complex d = t(iu, iu);
  const double normt = abs1(a) + abs1(b) + abs1(c) + abs1(d);
  if (normt == 0.0) return 0.0;
  const Complex an = a / normt, bn = b / normt, cn = c / normt, dn = d / normt;
  const Complex bc = bn * cn;
  const Complex diff = an - dn;
  const Complex disc = std::sqrt(diff * diff + 4.0 * bc);
  const Complex det = an * dn - bc;
  const Complex trace = an + dn;
  Complex e1 = 0.5 * (trace + disc);
  Complex e2 = 0.5 * (trace - disc);
  if (abs1(e1) > abs1(e2)) {
    e2 = det / e1;
  } else if (e2 != 0.0) {
    e1 = det / e2;
  }
  return normt * (abs1(e1 - dn) < abs1(e2 - dn) ? e1 : e2);
}

void reduce_to_triangular(ComplexMatrix& t, ComplexMatrix& q, const std::string& label,
                          int& sweeps) {
  const std::size_t n = t.dim();
  sweeps = 0;
  if (n < 2) return;
  const double norm = t.frobenius_norm();
  const int max_sweeps = 30 * static_cast<int>(n);
  std::size_t iu = n - 1;
  int iter = 0;
  while (true) {
    while (iu > 0 && deflate_if_negligible(t, iu - 1, norm)) {
      --iu;
      iter = 0;
    }
    if (iu == 0) break;
    ++iter;
    if (++sweeps > max_sweeps) {
      std::ostringstream os;
      os << "QR iteration did not converge after " << max_sweeps << " sweeps on "
         << (label.empty() ? std::string("matrix") : label) << " (" << n << "x" << n
         << ", ‖M‖_F=" << norm << ")";
      throw NumericalError(os.str());
    }
    std::size_t il = iu - 1;
    while (il > 0 && !deflate_if_negligible(t, il - 1, norm)) --il;

    const Complex shift = wilkinson_shift(t, iu, iter);
    Givens g = make_givens(t(il, il) - shift, t(il + 1, il));
    rotate_rows(t, il, il + 1, g, il);
    rotate_cols(t, il, il + 1, g, std::min(il + 2, iu));
    rotate_cols(q, il, il + 1, g, n - 1);

    for (std::size_t i = il + 1; i < iu; ++i) {
      g = make_givens(t(i, i - 1), t(i + 1, i - 1));
      rotate_rows(t, i, i + 1, g, i - 1);
      t(i + 1, i - 1) = 0.0;
      rotate_cols(t, i, i + 1, g, std::min(i + 2, iu));
      rotate_cols(q, i, i + 1, g, n - 1);
    }
  }
}

}  // namespace

SchurForm schur_decompose(const ComplexMatrix& m, const std::string& label) {
  if (!m.all_finite()) {
    throw NumericalError("schur_decompose: non-finite entries in " +
                         (label.empty() ? std::string("matrix") : label));
  }
  SchurForm out{m, ComplexMatrix::identity(m.dim()), 0};
  reduce_to_hessenberg(out.t, out.q);
  reduce_to_triangular(out.t, out.q, label, out.sweeps);
  return out;
}

}  // namespace nhlattice
