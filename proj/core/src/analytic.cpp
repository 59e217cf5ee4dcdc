// SPDX-License-Identifier: Apache-2.0

#include "nhlattice/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nhlattice/errors.hpp"

namespace nhlattice {

MomentumSet momenta(const BoundaryFamily& family, int n_sites) {
  family.validate(n_sites);
  constexpr Complex kI(0.0, 1.0);
  MomentumSet out;
  out.rho = family.rho;
  out.phi = family.phi;
  out.q = family.q;
  out.n_sites = n_sites;
  out.momenta.reserve(static_cast<std::size_t>(n_sites));
  const double n = n_sites;
  const Complex imag_part = 0.5 * kI * (1.0 - family.rho) * family.q;
  const Complex lhs = std::exp(0.5 * family.rho * family.q * n + kI * family.phi);
  for (int m = 0; m < n_sites; ++m) {
    const Complex k = (family.phi + 2.0 * std::numbers::pi * m) / n + imag_part;
    const Complex rhs = std::exp(0.5 * family.q * n + kI * k * n);
    if (std::abs(lhs - rhs) > 1e-12 * std::abs(lhs)) {
      std::ostringstream os;
      os << "momentum self-check failed for m=" << m << ": relative mismatch "
         << std::abs(lhs - rhs) / std::abs(lhs);
      throw NumericalError(os.str());
    }
    out.momenta.push_back(k);
  }
  return out;
}

ComplexVector spectrum_closed_form(const BoundaryFamily& family, int n_sites) {
  const MomentumSet ks = momenta(family, n_sites);
  ComplexVector e;
  e.reserve(ks.momenta.size());
  for (const Complex k : ks.momenta) e.push_back(2.0 * family.t * std::cos(k));
  return e;
}

ComplexVector eigenmode_closed_form(Complex k, Complex q, int n_sites, Side which, Basis basis) {
  if (n_sites < 1) throw ValidationError("eigenmode_closed_form: n_sites must be positive");
  constexpr Complex kI(0.0, 1.0);
  const double sign = which == Side::right ? -1.0 : 1.0;
  const Complex envelope = basis == Basis::bare ? 0.5 * q : Complex(0.0);
  const Complex rate = sign * (envelope + kI * k);
  ComplexVector v(static_cast<std::size_t>(n_sites));
  for (int n = 1; n <= n_sites; ++n) v[static_cast<std::size_t>(n - 1)] = std::exp(rate * double(n));
  return v;
}

ComplexVector normalized(std::span<const Complex> v) {
  const double nrm = norm2(v);
  if (nrm == 0.0) throw ValidationError("normalized: zero vector");
  ComplexVector out(v.begin(), v.end());
  for (Complex& z : out) z /= nrm;
  return out;
}

ComplexVector spectrum_obc(int n_sites, Complex t) {
  if (n_sites < 2) throw ValidationError("spectrum_obc: n_sites must be >= 2");
  ComplexVector e;
  e.reserve(static_cast<std::size_t>(n_sites));
  for (int m = 1; m <= n_sites; ++m) {
    e.push_back(2.0 * t * std::cos(std::numbers::pi * m / (n_sites + 1.0)));
  }
  return e;
}

N4Spectrum spectrum_n4(Complex t, Complex q, Complex alpha_left, Complex alpha_right) {
  N4Spectrum out;
  out.alpha_sq = alpha_left * alpha_right;
  const Complex a2 = out.alpha_sq;
  out.delta = a2 * a2 + 2.0 * a2 +
              4.0 * (alpha_left * std::exp(-2.0 * q) + alpha_right * std::exp(2.0 * q)) + 5.0;
  const Complex root_delta = std::sqrt(out.delta);
  const Complex prefactor = t / std::numbers::sqrt2;
  std::size_t i = 0;
  for (double outer : {1.0, -1.0}) {
    for (double inner : {1.0, -1.0}) {
      out.energies[i++] = outer * prefactor * std::sqrt(a2 + 3.0 + inner * root_delta);
    }
  }
  return out;
}

}  // namespace nhlattice
