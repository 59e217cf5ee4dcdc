// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nhlattice {

/// Raised when inputs violate a documented precondition (bad lattice size,
/// zero hopping, range-guard overflow, malformed CLI values).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a numerical routine cannot deliver its contract, e.g. the
/// QR iteration fails to converge. Never replaced by silent NaNs.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nhlattice
