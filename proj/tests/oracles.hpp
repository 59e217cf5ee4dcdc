// SPDX-License-Identifier: Apache-2.0
//
// Reference implementations used only by tests. None of these call into the
// library: matrices are transcribed site by site and eigenvalues come from
// Eigen's ComplexEigenSolver.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;
inline const cd kI{0.0, 1.0};

struct Hopping {
  cd t_left;
  cd t_right;
  cd alpha_left;
  cd alpha_right;
};

// Boundary family by hand: t_L = t e^{-q/2}, t_R = t e^{q/2},
// alpha_L = e^{i phi} e^{rho q N / 2}, alpha_R = 1 / alpha_L.
inline Hopping family(double rho, double phi, cd q, cd t, int n) {
  const cd al = std::exp(kI * phi) * std::exp(rho * q * double(n) / 2.0);
  return {t * std::exp(-q / 2.0), t * std::exp(q / 2.0), al, 1.0 / al};
}

// Sites are 1-based in the formulas; matrix row = creation site.
// c†_n c_{n+1} carries t_R, c†_{n+1} c_n carries t_L, c†_N c_1 carries
// alpha_R t_R and c†_1 c_N carries alpha_L t_L.
inline Eigen::MatrixXcd hamiltonian(int n, const Hopping& h) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int site = 1; site < n; ++site) {
    m(site - 1, site) += h.t_right;
    m(site, site - 1) += h.t_left;
  }
  m(n - 1, 0) += h.alpha_right * h.t_right;
  m(0, n - 1) += h.alpha_left * h.t_left;
  return m;
}

inline Eigen::MatrixXcd transformed(int n, cd q, cd t, const Hopping& h) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (int site = 1; site < n; ++site) {
    m(site - 1, site) += t;
    m(site, site - 1) += t;
  }
  m(n - 1, 0) += t * h.alpha_right * std::exp(q * double(n) / 2.0);
  m(0, n - 1) += t * h.alpha_left * std::exp(-q * double(n) / 2.0);
  return m;
}

inline std::vector<cd> eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  std::vector<cd> out(solver.eigenvalues().data(),
                      solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

// E_m = 2 t cos(k_m), k_m = (phi + 2 pi m)/N + i (1 - rho) q / 2.
inline std::vector<cd> ring_energies(double rho, double phi, cd q, cd t, int n) {
  std::vector<cd> e;
  for (int m = 0; m < n; ++m) {
    const cd k = (phi + 2.0 * kPi * m) / double(n) + kI * (1.0 - rho) * q / 2.0;
    e.push_back(2.0 * t * std::cos(k));
  }
  return e;
}

inline std::vector<double> open_chain_energies(int n, double t) {
  std::vector<double> e;
  for (int m = 1; m <= n; ++m) e.push_back(2.0 * t * std::cos(kPi * m / (n + 1.0)));
  return e;
}

// Four-site closed form typed in from the quartic
// E^4 - (3 + a^2) t^2 E^2 + ... with a^2 = alpha_L alpha_R.
inline cd delta_n4(cd q, cd al, cd ar) {
  const cd a2 = al * ar;
  return a2 * a2 + 2.0 * a2 + 4.0 * (al * std::exp(-2.0 * q) + ar * std::exp(2.0 * q)) + 5.0;
}

inline std::vector<cd> energies_n4(cd t, cd q, cd al, cd ar) {
  const cd a2 = al * ar;
  const cd root = std::sqrt(delta_n4(q, al, ar));
  std::vector<cd> e;
  for (double outer : {1.0, -1.0})
    for (double inner : {1.0, -1.0})
      e.push_back(outer * t / std::sqrt(2.0) * std::sqrt(a2 + 3.0 + inner * root));
  return e;
}

// Bottleneck matching distance by enumerating permutations; small inputs only.
inline double matching_distance(std::vector<cd> a, std::vector<cd> b) {
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Greedy nearest matching; adequate when spectra are well separated relative
// to the errors being measured.
inline double greedy_distance(std::vector<cd> a, std::vector<cd> b) {
  double worst = 0.0;
  for (const cd& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](cd p, cd r) { return std::abs(p - x) < std::abs(r - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

inline double frobenius(const Eigen::MatrixXcd& m) { return m.norm(); }

// Right mode v_n = e^{-qn/2} e^{-ikn}; left mode u_n = e^{qn/2} e^{ikn}.
inline std::vector<cd> right_mode(cd k, cd q, int n) {
  std::vector<cd> v;
  for (int s = 1; s <= n; ++s) v.push_back(std::exp(-q * double(s) / 2.0) * std::exp(-kI * k * double(s)));
  return v;
}

inline std::vector<cd> left_mode(cd k, cd q, int n) {
  std::vector<cd> u;
  for (int s = 1; s <= n; ++s) u.push_back(std::exp(q * double(s) / 2.0) * std::exp(kI * k * double(s)));
  return u;
}

// Slope of log|v_n|^2 for the closed-form mode, by least squares on sites 1..N.
inline double density_rate(const std::vector<cd>& v) {
  const double n = double(v.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = double(i + 1);
    const double y = std::log(std::norm(v[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
