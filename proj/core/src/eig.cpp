// SPDX-License-Identifier: Apache-2.0

#include "nhlattice/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nhlattice/assignment.hpp"
#include "nhlattice/errors.hpp"

namespace nhlattice {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Triangular solves rescale the partial solution before it can overflow.
constexpr double kBig = 1e100;

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

double small_num(std::size_t n) {
  return std::numeric_limits<double>::min() * (static_cast<double>(n) / kEps);
}

// Perturbed divisor T_jj − λ, floored at smin as in LAPACK's xTREVC.
Complex safe_divisor(Complex d, double smin) {
  return abs1(d) < smin ? Complex(smin) : d;
}

// Divides num by d, rescaling `x` (which num was accumulated from) first if
// the quotient would exceed kBig.
Complex scaled_quotient(Complex num, Complex d, std::span<Complex> x) {
  const double an = abs1(num);
  const double ad = abs1(d);
  if (an > kBig * ad && an > 1.0) {
    const double s = 1.0 / an;
    for (Complex& z : x) z *= s;
    num *= s;
  }
  return num / d;
}

// Solves (T − λ_k I) x = 0 with x_k = 1, x_j = 0 for j > k.
ComplexVector triangular_right_vector(const ComplexMatrix& t, std::size_t k) {
  const std::size_t n = t.dim();
  ComplexVector x(n, 0.0);
  x[k] = 1.0;
  const Complex lambda = t(k, k);
  const double smin = std::max(kEps * abs1(lambda), small_num(n));
  for (std::size_t jj = k; jj-- > 0;) {
    Complex num = 0.0;
    for (std::size_t l = jj + 1; l <= k; ++l) num += t(jj, l) * x[l];
    const Complex d = safe_divisor(t(jj, jj) - lambda, smin);
    x[jj] = scaled_quotient(-num, d, std::span<Complex>(x.data() + jj + 1, k - jj));
  }
  return x;
}

// Solves z (T − λ_k I) = 0 with z_k = 1, z_j = 0 for j < k.
ComplexVector triangular_left_vector(const ComplexMatrix& t, std::size_t k) {
  const std::size_t n = t.dim();
  ComplexVector z(n, 0.0);
  z[k] = 1.0;
  const Complex lambda = t(k, k);
  const double smin = std::max(kEps * abs1(lambda), small_num(n));
  for (std::size_t j = k + 1; j < n; ++j) {
    Complex num = 0.0;
    for (std::size_t l = k; l < j; ++l) num += z[l] * t(l, j);
    const Complex d = safe_divisor(t(j, j) - lambda, smin);
    z[j] = scaled_quotient(-num, d, std::span<Complex>(z.data() + k, j - k));
  }
  return z;
}

// Unit 2-norm with the largest-magnitude component real and positive.
void normalize_with_phase(ComplexVector& v) {
  double big = 0.0;
  for (const Complex& z : v) big = std::max(big, abs1(z));
  if (big == 0.0) return;
  for (Complex& z : v) z /= big;
  const double nrm = norm2(v);
  std::size_t pivot = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best * (1.0 + 1e-12)) {
      best = a;
      pivot = i;
    }
  }
  const Complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  for (Complex& z : v) z *= phase / nrm;
  v[pivot] = Complex(v[pivot].real(), 0.0);
}

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<std::size_t> sort_permutation(const ComplexVector& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lex_less(values[a], values[b]); });
  return order;
}

struct Prepared {
  BalancedMatrix balanced;
  SchurForm schur;
};

Prepared prepare(const ComplexMatrix& m, const EigenOptions& options) {
  if (!m.all_finite()) {
    throw NumericalError("eigensystem: non-finite entries in " +
                         (options.label.empty() ? std::string("matrix") : options.label));
  }
  Prepared p;
  if (options.balance) {
    p.balanced = balance(m);
  } else {
    p.balanced = BalancedMatrix{m, std::vector<double>(m.dim(), 1.0)};
  }
  p.schur = schur_decompose(p.balanced.matrix, options.label);
  return p;
}

void update_residuals(const ComplexMatrix& m, EigenSystem& es) {
  const std::size_t n = es.size();
  const double mnorm = std::max(m.frobenius_norm(), std::numeric_limits<double>::min());
  es.residuals.assign(n, 0.0);
  es.max_residual = 0.0;
  es.max_left_residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex lambda = es.eigenvalues[k];
    const ComplexVector v = es.right(k);
    const ComplexVector u = es.left(k);
    ComplexVector mv = m.apply(v);
    for (std::size_t i = 0; i < n; ++i) mv[i] -= lambda * v[i];
    ComplexVector um = m.apply_left(u);
    for (std::size_t i = 0; i < n; ++i) um[i] -= lambda * u[i];
    es.residuals[k] = norm2(mv) / mnorm;
    es.max_residual = std::max(es.max_residual, es.residuals[k]);
    es.max_left_residual = std::max(es.max_left_residual, norm2(um) / mnorm);
  }
}

// Gauss-Jordan with partial pivoting; only used on small cluster blocks.
ComplexMatrix inverse(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  ComplexMatrix inv = ComplexMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) throw NumericalError("inverse: singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(pivot, j));
      std::swap(inv(col, j), inv(pivot, j));
    }
    const Complex d = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

}  // namespace

void sort_eigenvalues(ComplexVector& values) {
  std::stable_sort(values.begin(), values.end(), lex_less);
}

ComplexVector eigenvalues(const ComplexMatrix& m, const EigenOptions& options) {
  const Prepared p = prepare(m, options);
  ComplexVector values(m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k) values[k] = p.schur.t(k, k);
  sort_eigenvalues(values);
  return values;
}

double spectral_scale(const ComplexMatrix& m) {
  return std::max(1.0, balance(m).matrix.frobenius_norm());
}

EigenSystem eigensystem(const ComplexMatrix& m, const EigenOptions& options) {
  const std::size_t n = m.dim();
  const Prepared p = prepare(m, options);
  const ComplexMatrix& t = p.schur.t;
  const ComplexMatrix& q = p.schur.q;
  const std::vector<double>& d = p.balanced.scaling;

  ComplexVector raw_values(n);
  for (std::size_t k = 0; k < n; ++k) raw_values[k] = t(k, k);
  const std::vector<std::size_t> order = sort_permutation(raw_values);

  EigenSystem es;
  es.balanced = options.balance;
  es.qr_sweeps = p.schur.sweeps;
  es.scale = std::max(1.0, p.balanced.matrix.frobenius_norm());
  es.eigenvalues.resize(n);
  es.right_vectors = ComplexMatrix(n);
  es.left_vectors = ComplexMatrix(n);

  for (std::size_t out = 0; out < n; ++out) {
    const std::size_t k = order[out];
    const Complex lambda = raw_values[k];
    es.eigenvalues[out] = lambda;

    // Right: v = D Q x.
    const ComplexVector x = triangular_right_vector(t, k);
    ComplexVector v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc = 0.0;
      for (std::size_t l = 0; l <= k; ++l) acc += q(i, l) * x[l];
      v[i] = d[i] * acc;
    }
    normalize_with_phase(v);

    // Left: u = z Q^H D^{-1}.
    const ComplexVector z = triangular_left_vector(t, k);
    ComplexVector u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc = 0.0;
      for (std::size_t l = k; l < n; ++l) acc += z[l] * std::conj(q(i, l));
      u[i] = acc / d[i];
    }
    normalize_with_phase(u);

    for (std::size_t i = 0; i < n; ++i) {
      es.right_vectors(i, out) = v[i];
      es.left_vectors(out, i) = u[i];
    }
  }
  update_residuals(m, es);
  es.cond_v = condition_number(es.right_vectors);
  return es;
}

EigenSystem resolve_degenerate(const ComplexMatrix& m, EigenSystem es,
                               const ComplexMatrix& splitting, double tolerance) {
  const std::size_t n = es.size();
  if (m.dim() != n || splitting.dim() != n) {
    throw ValidationError("resolve_degenerate: dimension mismatch");
  }
  const double gap = tolerance * es.scale;
  bool changed = false;
  std::vector<bool> assigned(n, false);
  for (std::size_t first = 0; first < n; ++first) {
    if (assigned[first]) continue;
    std::vector<std::size_t> members{first};
    for (std::size_t j = first + 1; j < n; ++j) {
      if (!assigned[j] && std::abs(es.eigenvalues[j] - es.eigenvalues[first]) <= gap) {
        members.push_back(j);
        assigned[j] = true;
      }
    }
    const std::size_t c = members.size();
    if (c < 2) continue;

    ComplexMatrix b(c);
    ComplexMatrix a(c);
    for (std::size_t i = 0; i < c; ++i) {
      const ComplexVector u = es.left(members[i]);
      const ComplexVector ug = splitting.apply_left(u);
      for (std::size_t j = 0; j < c; ++j) {
        const ComplexVector v = es.right(members[j]);
        b(i, j) = bilinear(u, v);
        a(i, j) = bilinear(ug, v);
      }
    }
    // A singular overlap means the cluster is defective; no basis diagonalizes it.
    // The vectors are unit length, so the smallest singular value is absolute.
    const std::vector<double> sv = singular_values(b);
    if (!(sv.back() > 1e-8 && sv.front() < 1e8 * sv.back())) continue;
    const ComplexMatrix b_inv = inverse(b);
    const EigenSystem split = eigensystem(b_inv * a);
    if (min_pairwise_gap(split.eigenvalues) <= 1e-8 * split.scale) continue;

    std::vector<ComplexVector> new_right(c, ComplexVector(n, 0.0));
    std::vector<ComplexVector> new_left(c, ComplexVector(n, 0.0));
    for (std::size_t k = 0; k < c; ++k) {
      const ComplexVector x = split.right(k);
      const ComplexVector y = split.left(k);
      ComplexVector w(c, 0.0);  // y B^{-1}
      for (std::size_t j = 0; j < c; ++j)
        for (std::size_t i = 0; i < c; ++i) w[j] += y[i] * b_inv(i, j);
      for (std::size_t j = 0; j < c; ++j) {
        const ComplexVector v = es.right(members[j]);
        const ComplexVector u = es.left(members[j]);
        for (std::size_t i = 0; i < n; ++i) {
          new_right[k][i] += x[j] * v[i];
          new_left[k][i] += w[j] * u[i];
        }
      }
      normalize_with_phase(new_right[k]);
      normalize_with_phase(new_left[k]);
    }
    for (std::size_t k = 0; k < c; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        es.right_vectors(i, members[k]) = new_right[k][i];
        es.left_vectors(members[k], i) = new_left[k][i];
      }
    }
    changed = true;
  }
  if (changed) {
    update_residuals(m, es);
    es.cond_v = condition_number(es.right_vectors);
  }
  return es;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  // Columns stored contiguously.
  std::vector<ComplexVector> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = m.column(j);

  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          alpha += std::norm(cols[p][i]);
          beta += std::norm(cols[r][i]);
          gamma += std::conj(cols[p][i]) * cols[r][i];
        }
        const double g = std::abs(gamma);
        if (alpha == 0.0 || beta == 0.0 || g <= kEps * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        rotated = true;
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double tt = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + tt * tt);
        const double s = c * tt;
        for (std::size_t i = 0; i < n; ++i) {
          const Complex a = cols[p][i];
          const Complex b = phase * cols[r][i];
          cols[p][i] = c * a - s * b;
          cols[r][i] = s * a + c * b;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = norm2(cols[j]);
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double condition_number(const ComplexMatrix& m) {
  if (m.dim() == 0) return 1.0;
  const std::vector<double> sv = singular_values(m);
  if (sv.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw ValidationError("multiset_distance: length mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
  CostMatrix c{a.size(), std::vector<double>(a.size() * a.size())};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c.cost[i * c.n + j] = std::abs(a[i] - b[j]);
  return bottleneck_assignment(c);
}

double min_pairwise_gap(std::span<const Complex> values) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      gap = std::min(gap, std::abs(values[i] - values[j]));
  return gap;
}

}  // namespace nhlattice
