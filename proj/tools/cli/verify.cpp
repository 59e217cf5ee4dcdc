// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "cli.hpp"
#include "nhlattice/analysis.hpp"
#include "nhlattice/analytic.hpp"
#include "nhlattice/eig.hpp"
#include "nhlattice/errors.hpp"
#include "nhlattice/skin.hpp"

namespace nhlattice::cli {
namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// Spectral distance relative to the matrix scale.
double relative_distance(const ComplexMatrix& m, std::span<const Complex> expected) {
  return multiset_distance(eigenvalues(m), expected) / spectral_scale(m);
}

CheckResult closed_form_spectrum(bool quick) {
  double worst = 0.0;
  const std::vector<double> rhos =
      quick ? std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}
            : std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  for (int n : {4, 10})
    for (Complex q : {Complex(4.0), Complex(4.0, kPi)})
      for (double phi : {0.0, kPi / 2, kPi})
        for (double rho : rhos) {
          const BoundaryFamily f{rho, phi, q, 1.0};
          worst = std::max(worst, relative_distance(build_hamiltonian(f.expand(n)),
                                                    spectrum_closed_form(f, n)));
        }
  return {"closed_form_spectrum", worst < 1e-8, "max distance/scale " + sci(worst)};
}

CheckResult real_at_rho_one() {
  double worst = 0.0;
  for (int n : {4, 10})
    for (double phi : {0.0, kPi / 4, kPi / 2, kPi, 3 * kPi / 2})
      for (Complex q : {Complex(4.0), Complex(4.0, kPi)}) {
        const BoundaryFamily f{1.0, phi, q, 1.0};
        for (const Complex& e : eigenvalues(build_hamiltonian(f.expand(n)))) {
          worst = std::max(worst, std::abs(e.imag()));
        }
      }
  return {"real_spectrum_rho_one", worst < 1e-10, "max |Im E| " + sci(worst)};
}

Complex random_complex(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  return std::polar(mag(rng), ang(rng));
}

CheckResult isospectrality(bool quick) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> sites(2, 12);
  const int draws = quick ? 20 : 100;
  double worst = 0.0;
  for (int d = 0; d < draws; ++d) {
    ModelParams p;
    p.n_sites = sites(rng);
    p.t_left = random_complex(rng, 0.5, 2.0);
    p.t_right = random_complex(rng, 0.5, 2.0);
    p.alpha_left = random_complex(rng, 0.1, 10.0);
    p.alpha_right = random_complex(rng, 0.1, 10.0);
    const ComplexMatrix h = build_hamiltonian(p);
    const double dist = multiset_distance(eigenvalues(h), eigenvalues(build_transformed(p)));
    worst = std::max(worst, dist / spectral_scale(h));
  }
  return {"isospectral_gauge", worst < 1e-8,
          std::to_string(draws) + " draws, max distance/scale " + sci(worst)};
}

CheckResult four_site_closed_form(bool quick) {
  std::mt19937_64 rng(4);
  const int draws = quick ? 100 : 1000;
  double worst = 0.0;
  for (int d = 0; d < draws; ++d) {
    ModelParams p;
    p.n_sites = 4;
    p.t_left = random_complex(rng, 0.5, 2.0);
    p.t_right = random_complex(rng, 0.5, 2.0);
    p.alpha_left = random_complex(rng, 0.1, 10.0);
    p.alpha_right = random_complex(rng, 0.1, 10.0);
    const N4Spectrum cf = spectrum_n4(p.t(), p.q(), p.alpha_left, p.alpha_right);
    worst = std::max(worst, relative_distance(build_hamiltonian(p), cf.energies));
  }
  const SweepBase base{4, BoundaryFamily{1.0, 0.0, 4.0, 1.0}};
  const auto eps = find_exceptional_points(base, Axis::r, -5.0, 0.0, {.coarse_steps = 500});
  double ep_error = std::numeric_limits<double>::infinity();
  for (const EPReport& r : eps) {
    if (r.classification == EPClass::exceptional) {
      ep_error = std::min(ep_error, std::abs(r.parameter_value + 3.0));
    }
  }
  const bool ok = worst < 1e-9 && eps.size() == 1 && ep_error < 1e-6;
  return {"four_site_closed_form", ok,
          std::to_string(draws) + " draws, max distance/scale " + sci(worst) + "; " +
              std::to_string(eps.size()) + " EP(s), |r+3| " + sci(ep_error)};
}

CheckResult rho_reflection() {
  double worst = 0.0;
  for (int n : {4, 10})
    for (double rho : {0.0, 0.25, 0.5, 0.75}) {
      const BoundaryFamily a{rho, 0.0, 4.0, 1.0};
      const BoundaryFamily b{2.0 - rho, 0.0, 4.0, 1.0};
      worst = std::max(worst, multiset_distance(eigenvalues(build_hamiltonian(a.expand(n))),
                                                eigenvalues(build_hamiltonian(b.expand(n)))));
    }
  const BoundaryFamily a{0.5, kPi / 2, 4.0, 1.0};
  const BoundaryFamily b{1.5, kPi / 2, 4.0, 1.0};
  const double control = multiset_distance(eigenvalues(build_hamiltonian(a.expand(10))),
                                           eigenvalues(build_hamiltonian(b.expand(10))));
  return {"rho_reflection", worst < 1e-8 && control > 1e-3,
          "max distance " + sci(worst) + ", phi=pi/2 control " + sci(control)};
}

CheckResult open_chain() {
  double worst = 0.0;
  for (int n : {2, 4, 10, 64}) {
    const ModelParams p = ModelParams::open_chain(n, std::exp(-2.0), std::exp(2.0));
    worst = std::max(worst, multiset_distance(eigenvalues(build_hamiltonian(p)),
                                              spectrum_obc(n, p.t())));
  }
  return {"open_chain_limit", worst < 1e-10, "max distance " + sci(worst)};
}

CheckResult skin_rates() {
  double worst = 0.0;
  for (double rho : {0.25, 0.5, 1.0, 1.5, 2.0}) {
    const ModelParams p = BoundaryFamily{rho, 0.0, 4.0, 1.0}.expand(10);
    const double bare = skin_profile(p, Frame::bare, ModeSide::right).decay_rate;
    const double tilde = skin_profile(p, Frame::transformed, ModeSide::right).decay_rate;
    worst = std::max(worst, std::abs(bare - rho * 4.0) / (rho * 4.0));
    if (rho != 1.0) {
      const double expect = -(1.0 - rho) * 4.0;
      worst = std::max(worst, std::abs(tilde - expect) / std::abs(expect));
    }
  }
  const auto flat_bare = skin_profile(BoundaryFamily{0.0, 0.0, 4.0, 1.0}.expand(10), Frame::bare,
                                      ModeSide::right);
  const auto flat_tilde = skin_profile(BoundaryFamily{1.0, 0.0, 4.0, 1.0}.expand(10),
                                       Frame::transformed, ModeSide::right);
  const bool extended = flat_bare.side == Localization::extended &&
                        flat_tilde.side == Localization::extended;
  return {"skin_rates", worst < 0.02 && extended,
          "max relative rate error " + sci(worst) + (extended ? "" : "; extended check failed")};
}

CheckResult mode_residuals() {
  const BoundaryFamily f{0.5, 0.0, 4.0, 1.0};
  const int n = 10;
  const ComplexMatrix h = build_hamiltonian(f.expand(n));
  const MomentumSet ks = momenta(f, n);
  const ComplexVector energies = spectrum_closed_form(f, n);
  double residual = 0.0;
  double biorth = 0.0;
  for (int j = 0; j < n; ++j) {
    const ComplexVector v =
        eigenmode_closed_form(ks.momenta[j], f.q, n, Side::right, Basis::bare);
    const ComplexVector u = eigenmode_closed_form(ks.momenta[j], f.q, n, Side::left, Basis::bare);
    ComplexVector hv = h.apply(v);
    ComplexVector uh = h.apply_left(u);
    for (int i = 0; i < n; ++i) {
      hv[i] -= energies[j] * v[i];
      uh[i] -= energies[j] * u[i];
    }
    residual = std::max({residual, norm2(hv) / norm2(v), norm2(uh) / norm2(u)});
    for (int m = 0; m < n; ++m) {
      const ComplexVector vm =
          eigenmode_closed_form(ks.momenta[m], f.q, n, Side::right, Basis::bare);
      const Complex expected = j == m ? Complex(n) : Complex(0.0);
      biorth = std::max(biorth, std::abs(bilinear(u, vm) - expected) / n);
    }
  }
  return {"mode_residuals", residual < 1e-10 && biorth < 1e-9,
          "max residual " + sci(residual) + ", biorthogonality " + sci(biorth)};
}

CheckResult pt_identity() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> hop(0.2, 3.0);
  std::uniform_real_distribution<double> corner(-5.0, 5.0);
  std::uniform_int_distribution<int> sites(2, 16);
  bool exact = true;
  for (int d = 0; d < 100; ++d) {
    ModelParams p;
    p.n_sites = sites(rng);
    p.t_left = hop(rng);
    p.t_right = hop(rng);
    p.alpha_left = corner(rng);
    p.alpha_right = corner(rng);
    const ComplexMatrix h = build_hamiltonian(p);
    exact = exact && pt_conjugate(h) == h;
  }
  return {"pt_identity", exact, exact ? "exact on 100 real draws" : "mismatch"};
}

CheckResult gauge_similarity() {
  double worst = 0.0;
  for (double rho : {0.0, 0.5, 1.0, 2.0}) {
    const ModelParams p = BoundaryFamily{rho, 1.0, Complex(1.5, 0.7), 1.0}.expand(8);
    const ComplexVector s = gauge_scaling(8, p.q());
    ComplexVector s_inv(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) s_inv[i] = 1.0 / s[i];
    const ComplexMatrix mapped = scale_rows_cols(build_hamiltonian(p), s, s_inv);
    const ComplexMatrix ht = build_transformed(p);
    worst = std::max(worst, max_abs_difference(mapped, ht) / ht.max_abs());
  }
  return {"gauge_similarity", worst < 1e-12, "max relative entry error " + sci(worst)};
}

}  // namespace

std::vector<CheckResult> verify_suite(bool quick) {
  std::vector<CheckResult> out;
  auto guarded = [&out](const char* name, auto&& check) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };
  guarded("closed_form_spectrum", [&] { return closed_form_spectrum(quick); });
  guarded("real_spectrum_rho_one", [] { return real_at_rho_one(); });
  guarded("isospectral_gauge", [&] { return isospectrality(quick); });
  guarded("four_site_closed_form", [&] { return four_site_closed_form(quick); });
  guarded("rho_reflection", [] { return rho_reflection(); });
  guarded("open_chain_limit", [] { return open_chain(); });
  guarded("skin_rates", [] { return skin_rates(); });
  guarded("mode_residuals", [] { return mode_residuals(); });
  guarded("pt_identity", [] { return pt_identity(); });
  guarded("gauge_similarity", [] { return gauge_similarity(); });
  return out;
}

}  // namespace nhlattice::cli
