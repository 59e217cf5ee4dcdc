// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "nhlattice/eig.hpp"
#include "nhlattice/model.hpp"

namespace nhlattice {

enum class ModeSide { right, left };
enum class Localization { left, right, extended };

std::string_view to_string(Localization side);

struct DecayFit {
  /// density ∝ e^{−rate·n}; positive means decreasing toward the right edge.
  double rate = 0.0;
  double r2 = 0.0;
  /// Sites dropped because their density was not positive.
  std::vector<std::size_t> excluded_sites;
};

struct SkinProfile {
  /// Mean over modes of the normalized |ψ_n|², sums to 1.
  std::vector<double> densities;
  Localization side = Localization::extended;
  double decay_rate = 0.0;
  double fit_r2 = 0.0;
  double ipr_mean = 0.0;
  std::vector<std::size_t> excluded_sites;
  /// False when the eigenvector matrix is numerically singular.
  bool trusted = true;
};

/// Σ|v_n|⁴ / (Σ|v_n|²)². Equals Σ|v_n|⁴ for unit vectors.
double ipr(std::span<const Complex> v);

/// |ψ_n|² of each unit-normalized mode; [mode][site].
std::vector<std::vector<double>> mode_densities(const EigenSystem& es, ModeSide which);

/// Inside a degenerate eigenspace the average depends on the basis; pass an
/// eigensystem that went through resolve_degenerate for reproducible profiles.
SkinProfile density_profile(const EigenSystem& es, ModeSide which);

/// Eigensystem with degenerate clusters resolved by the boundary twist.
EigenSystem skin_eigensystem(const ModelParams& p, Frame frame);

SkinProfile skin_profile(const ModelParams& p, Frame frame, ModeSide which);

/// Least squares of log density against the site index.
DecayFit fit_decay(std::span<const double> densities);
DecayFit fit_decay(const SkinProfile& profile);

/// Profile with sites in reverse order (n → N+1−n), refitted.
SkinProfile mirrored(const SkinProfile& profile);

}  // namespace nhlattice
