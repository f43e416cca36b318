#pragma once

#include <cmath>
#include <vector>

#include "cstarfix/errors.hpp"

namespace cstarfix {

enum class PointKind { RealScalar, RealVector, GridFunction };

/// A point of a metric space: a real scalar, a real vector, or a function
/// sampled on a uniform grid. Scalars store exactly one value.
struct Point {
  PointKind kind = PointKind::RealScalar;
  std::vector<double> values{0.0};

  static Point scalar(double x) { return {PointKind::RealScalar, {x}}; }
  static Point vector(std::vector<double> v) {
    return {PointKind::RealVector, std::move(v)};
  }
  static Point grid(std::vector<double> v) {
    return {PointKind::GridFunction, std::move(v)};
  }

  double as_scalar() const {
    if (kind != PointKind::RealScalar || values.size() != 1)
      throw PointMismatch("expected a scalar point");
    return values[0];
  }

  const std::vector<double>& samples() const { return values; }

  bool finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }

  friend bool operator==(const Point&, const Point&) = default;
};

}  // namespace cstarfix
