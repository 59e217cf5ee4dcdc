// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nhlattice/analysis.hpp"
#include "nhlattice/model.hpp"

namespace nhlattice::cli {

enum class Command { spectrum, sweep, ep, skin, verify };
enum class Format { csv, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitVerify = 3;

struct FamilyArgs {
  Complex t = 1.0;
  Complex q = 0.0;
  double rho = 1.0;
  double phi = 0.0;
};

struct DirectArgs {
  Complex t_left = 1.0;
  Complex t_right = 1.0;
  Complex alpha_left = 0.0;
  Complex alpha_right = 0.0;
};

struct RunConfig {
  Command command = Command::spectrum;
  int n_sites = 0;
  std::optional<FamilyArgs> family;
  std::optional<DirectArgs> direct;
  Frame frame = Frame::bare;
  Format format = Format::csv;
  /// Empty means the output stream passed to run().
  std::string out_path;

  Axis axis = Axis::rho;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  bool include_avoided = false;
  bool quick = false;

  /// Model parameters (validated) for the family or direct group.
  ModelParams params() const;
  SweepBase sweep_base() const;
};

/// Accepts "a", "a+bi", "a-bi", "bi" with no whitespace.
Complex parse_complex(std::string_view text);

/// %.16e, i.e. 17 significant digits.
std::string format_double(double x);
/// "re+imi" with both parts in format_double.
std::string format_complex(Complex z);

/// Parses argv (argv[0] is the program name). Throws ValidationError.
/// Returns nullopt when help was printed to `out`.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Executes a parsed config. Data goes to `out` (or out_path), diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run with exit-code mapping.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Invariant suite behind `verify`. `quick` trims grids and draw counts.
std::vector<CheckResult> verify_suite(bool quick);

}  // namespace nhlattice::cli
