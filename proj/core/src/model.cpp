// SPDX-License-Identifier: Apache-2.0

#include "nhlattice/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nhlattice/errors.hpp"

namespace nhlattice {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string describe(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

bool within_range_guard(int n_sites, Complex q) {
  return std::abs(q.real()) * n_sites <= kRangeGuard;
}

void check_range_guard(int n_sites, Complex q) {
  if (!within_range_guard(n_sites, q)) {
    std::ostringstream os;
    os << "range guard violated: |Re(q)|*N = " << std::abs(q.real()) * n_sites << " exceeds "
       << kRangeGuard;
    throw ValidationError(os.str());
  }
}

Complex ModelParams::q() const {
  if (gauge) return gauge->q;
  return std::log(t_right / t_left);
}

Complex ModelParams::t() const {
  if (gauge) return gauge->t;
  // The square root of t_L t_R that satisfies t e^{q/2} = t_R for the principal
  // q; the principal sqrt can differ by a sign and break the similarity.
  return t_right * std::exp(-0.5 * q());
}

void ModelParams::validate() const {
  if (n_sites < 2) {
    throw ValidationError("n_sites must be >= 2, got " + std::to_string(n_sites));
  }
  if (!finite(t_left) || !finite(t_right)) throw ValidationError("hoppings must be finite");
  if (t_left == 0.0 || t_right == 0.0) {
    throw ValidationError("hoppings must be nonzero (q = Log(t_R/t_L) undefined), got t_L=" +
                          describe(t_left) + " t_R=" + describe(t_right));
  }
  if (!finite(alpha_left) || !finite(alpha_right)) {
    throw ValidationError("boundary coefficients must be finite");
  }
  if (gauge && (!finite(gauge->q) || !finite(gauge->t) || gauge->t == 0.0)) {
    throw ValidationError("gauge (q, t) must be finite with t != 0");
  }
}

ModelParams ModelParams::open_chain(int n_sites, Complex t_left, Complex t_right) {
  ModelParams p;
  p.n_sites = n_sites;
  p.t_left = t_left;
  p.t_right = t_right;
  return p;
}

Complex BoundaryFamily::alpha_left(int n_sites) const {
  return std::exp(Complex(0.0, phi)) * std::exp(rho * q * (0.5 * n_sites));
}

void BoundaryFamily::validate(int n_sites) const {
  if (n_sites < 2) {
    throw ValidationError("n_sites must be >= 2, got " + std::to_string(n_sites));
  }
  if (!std::isfinite(rho)) throw ValidationError("rho must be finite");
  if (!std::isfinite(phi) || phi < 0.0 || phi >= 2.0 * std::numbers::pi) {
    throw ValidationError("phi must lie in [0, 2pi)");
  }
  if (!finite(q)) throw ValidationError("q must be finite");
  if (!finite(t) || t == 0.0) throw ValidationError("t must be finite and nonzero");
  check_range_guard(n_sites, q);
  if (!finite(alpha_left(n_sites)) || alpha_left(n_sites) == 0.0) {
    throw ValidationError("boundary coefficient e^{rho q N/2} over/underflows for rho=" +
                          std::to_string(rho));
  }
}

ModelParams BoundaryFamily::expand(int n_sites) const {
  validate(n_sites);
  ModelParams p;
  p.n_sites = n_sites;
  p.t_left = t * std::exp(-0.5 * q);
  p.t_right = t * std::exp(0.5 * q);
  p.alpha_left = alpha_left(n_sites);
  p.alpha_right = 1.0 / p.alpha_left;
  p.gauge = Gauge{q, t};
  return p;
}

ComplexMatrix build_hamiltonian(const ModelParams& p) {
  p.validate();
  const auto n = static_cast<std::size_t>(p.n_sites);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) += p.t_right;
    m(i + 1, i) += p.t_left;
  }
  m(n - 1, 0) += p.alpha_right * p.t_right;
  m(0, n - 1) += p.alpha_left * p.t_left;
  if (!m.all_finite()) throw ValidationError("Hamiltonian has non-finite entries");
  return m;
}

ComplexMatrix build_transformed(const ModelParams& p) {
  p.validate();
  const Complex q = p.q();
  check_range_guard(p.n_sites, q);
  const Complex t = p.t();
  const auto n = static_cast<std::size_t>(p.n_sites);
  const Complex half_qn = 0.5 * q * static_cast<double>(n);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m(i, i + 1) += t;
    m(i + 1, i) += t;
  }
  m(n - 1, 0) += t * p.alpha_right * std::exp(half_qn);
  m(0, n - 1) += t * p.alpha_left * std::exp(-half_qn);
  if (!m.all_finite()) throw ValidationError("transformed Hamiltonian has non-finite entries");
  return m;
}

ComplexMatrix build_matrix(const ModelParams& p, Frame frame) {
  return frame == Frame::bare ? build_hamiltonian(p) : build_transformed(p);
}

ComplexMatrix twist_generator(const ModelParams& p, Frame frame) {
  p.validate();
  const auto n = static_cast<std::size_t>(p.n_sites);
  const Complex i_unit(0.0, 1.0);
  ComplexMatrix g(n);
  if (frame == Frame::bare) {
    g(n - 1, 0) += -i_unit * p.alpha_right * p.t_right;
    g(0, n - 1) += i_unit * p.alpha_left * p.t_left;
  } else {
    const Complex q = p.q();
    check_range_guard(p.n_sites, q);
    const Complex half_qn = 0.5 * q * static_cast<double>(n);
    g(n - 1, 0) += -i_unit * p.t() * p.alpha_right * std::exp(half_qn);
    g(0, n - 1) += i_unit * p.t() * p.alpha_left * std::exp(-half_qn);
  }
  return g;
}

ComplexVector gauge_scaling(int n_sites, Complex q) {
  if (n_sites < 1) throw ValidationError("gauge_scaling: n_sites must be positive");
  check_range_guard(n_sites, q);
  ComplexVector s(static_cast<std::size_t>(n_sites));
  for (int n = 1; n <= n_sites; ++n) s[static_cast<std::size_t>(n - 1)] = std::exp(0.5 * q * double(n));
  return s;
}

ComplexMatrix scale_rows_cols(const ComplexMatrix& m, std::span<const Complex> left,
                              std::span<const Complex> right) {
  const std::size_t n = m.dim();
  if (left.size() != n || right.size() != n) {
    throw ValidationError("scale_rows_cols: size mismatch");
  }
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = left[i] * m(i, j) * right[j];
  return out;
}

ComplexMatrix pt_conjugate(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(m(n - 1 - j, n - 1 - i));
  return out;
}

ComplexMatrix space_inversion(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = m(n - 1 - i, n - 1 - j);
  return out;
}

}  // namespace nhlattice
