// SPDX-License-Identifier: Apache-2.0

#include "nhlattice/skin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nhlattice/errors.hpp"

namespace nhlattice {
namespace {

void classify(SkinProfile& p) {
  const double n = static_cast<double>(p.densities.size());
  std::size_t positive = 0;
  double centre = 0.0;
  for (std::size_t i = 0; i < p.densities.size(); ++i) {
    if (p.densities[i] > 0.0) ++positive;
    centre += static_cast<double>(i + 1) * p.densities[i];
  }
  if (positive < 2) {
    // All weight on one site: no slope to fit, side from the centre of mass.
    p.decay_rate = std::numeric_limits<double>::quiet_NaN();
    p.fit_r2 = std::numeric_limits<double>::quiet_NaN();
    p.excluded_sites.clear();
    for (std::size_t i = 0; i < p.densities.size(); ++i)
      if (!(p.densities[i] > 0.0)) p.excluded_sites.push_back(i);
    p.trusted = false;
    p.side = centre <= (n + 1.0) / 2.0 ? Localization::left : Localization::right;
    return;
  }
  const DecayFit fit = fit_decay(p.densities);
  p.decay_rate = fit.rate;
  p.fit_r2 = fit.r2;
  p.excluded_sites = fit.excluded_sites;
  if (p.ipr_mean < 2.0 / n) {
    p.side = Localization::extended;
  } else {
    p.side = p.decay_rate >= 0.0 ? Localization::left : Localization::right;
  }
}

}  // namespace

std::string_view to_string(Localization side) {
  switch (side) {
    case Localization::left:
      return "left";
    case Localization::right:
      return "right";
    case Localization::extended:
      return "extended";
  }
  return "extended";
}

double ipr(std::span<const Complex> v) {
  double s2 = 0.0;
  double s4 = 0.0;
  for (const Complex& z : v) {
    const double a = std::norm(z);
    s2 += a;
    s4 += a * a;
  }
  if (!(s2 > 0.0)) throw ValidationError("ipr: zero vector");
  return s4 / (s2 * s2);
}

std::vector<std::vector<double>> mode_densities(const EigenSystem& es, ModeSide which) {
  std::vector<std::vector<double>> out;
  out.reserve(es.size());
  for (std::size_t k = 0; k < es.size(); ++k) {
    const ComplexVector v = which == ModeSide::right ? es.right(k) : es.left(k);
    double total = 0.0;
    for (const Complex& z : v) total += std::norm(z);
    std::vector<double> d(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) d[i] = std::norm(v[i]) / total;
    out.push_back(std::move(d));
  }
  return out;
}

SkinProfile density_profile(const EigenSystem& es, ModeSide which) {
  if (es.size() == 0) throw ValidationError("density_profile: empty eigensystem");
  SkinProfile p;
  p.densities.assign(es.size(), 0.0);
  const auto modes = mode_densities(es, which);
  for (const auto& d : modes) {
    double s4 = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      p.densities[i] += d[i];
      s4 += d[i] * d[i];
    }
    p.ipr_mean += s4;
  }
  const double count = static_cast<double>(modes.size());
  for (double& x : p.densities) x /= count;
  p.ipr_mean /= count;
  p.trusted = es.cond_v < kDefectiveCondition;
  classify(p);
  return p;
}

EigenSystem skin_eigensystem(const ModelParams& p, Frame frame) {
  const ComplexMatrix m = build_matrix(p, frame);
  return resolve_degenerate(m, eigensystem(m), twist_generator(p, frame));
}

SkinProfile skin_profile(const ModelParams& p, Frame frame, ModeSide which) {
  return density_profile(skin_eigensystem(p, frame), which);
}

DecayFit fit_decay(std::span<const double> densities) {
  DecayFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    if (densities[i] > 0.0 && std::isfinite(densities[i])) {
      xs.push_back(static_cast<double>(i + 1));
      ys.push_back(std::log(densities[i]));
    } else {
      fit.excluded_sites.push_back(i);
    }
  }
  if (xs.size() < 2) throw ValidationError("fit_decay: fewer than two positive densities");
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  fit.rate = -slope;
  // A perfectly flat profile is fit exactly by the constant line.
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

DecayFit fit_decay(const SkinProfile& profile) { return fit_decay(profile.densities); }

SkinProfile mirrored(const SkinProfile& profile) {
  SkinProfile p = profile;
  std::reverse(p.densities.begin(), p.densities.end());
  classify(p);
  return p;
}

}  // namespace nhlattice
