#pragma once

#include "cstarfix/errors.hpp"

namespace cstarfix {

/// Numerical tolerances shared across the library.
///
/// eig_tol  slack on eigenvalue sign tests (positivity, order checks)
/// eq_tol   entrywise slack on equality tests (hermiticity, symmetry)
/// conv_tol iteration stopping threshold; residual checks use 10x this value
struct Tolerances {
  double eig_tol = 1e-10;
  double eq_tol = 1e-10;
  double conv_tol = 1e-9;

  /// All fields must be non-negative. Zero is allowed and means "exact".
  void validate() const {
    if (!(eig_tol >= 0.0) || !(eq_tol >= 0.0) || !(conv_tol >= 0.0))
      throw InvalidTolerance("tolerances must be non-negative");
  }
};

}  // namespace cstarfix
