#include "cstarfix/mapping_families.hpp"

#include <utility>

namespace cstarfix {

Mapping make_identity() {
  return [](const Point& p) { return p; };
}

Mapping make_affine(double alpha, double beta) {
  return [alpha, beta](const Point& p) {
    return Point::scalar(alpha * p.as_scalar() + beta);
  };
}

Mapping make_scale_except_zero(double factor, double at_zero) {
  return [factor, at_zero](const Point& p) {
    const double x = p.as_scalar();
    return Point::scalar(x == 0.0 ? at_zero : factor * x);
  };
}

Mapping make_scale_except_zero_section(double factor) {
  return [factor](const Point& p) {
    const double y = p.as_scalar();
    return Point::scalar(y == 0.0 ? 0.0 : y / factor);
  };
}

Mapping make_reflect_plateau() {
  return [](const Point& p) {
    const double x = p.as_scalar();
    return Point::scalar(x <= 1.5 ? 3.0 - x : 3.0);
  };
}

Mapping make_band_double() {
  return [](const Point& p) {
    const double x = p.as_scalar();
    return Point::scalar((x > 1.0 && x <= 2.0) ? 2.0 * x : x);
  };
}

Mapping compose_power(Mapping f, int times) {
  if (times < 0) throw Error("compose_power: times must be >= 0");
  if (times == 0) return make_identity();
  return [f = std::move(f), times](const Point& p) {
    Point v = p;
    for (int i = 0; i < times; ++i) v = f(v);
    return v;
  };
}

}  // namespace cstarfix
