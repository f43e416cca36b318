#include <cmath>
#include <vector>

#include "cstarfix/metric.hpp"
#include "doctest.h"

using namespace cstarfix;

namespace {

std::vector<Point> scalar_points(std::initializer_list<double> xs) {
  std::vector<Point> out;
  for (double x : xs) out.push_back(Point::scalar(x));
  return out;
}

}  // namespace

TEST_CASE("diag metric evaluates to diag(|x-y|, k|x-y|) exactly") {
  const CStarMetric m = make_diag_metric(2.0);
  CHECK(m.algebra_dim == 2);
  CHECK(m.diagonal);

  const Point x = Point::scalar(0.5), y = Point::scalar(0.25);
  const Matrix d = m.eval(x, y);
  CHECK(d.at(0, 0) == Complex(0.25));
  CHECK(d.at(1, 1) == Complex(0.5));
  CHECK(d.at(0, 1) == Complex(0.0));
  // Exact, not approximate: the norm shortcut multiplies two binary values.
  CHECK(m.norm(x, y) == 0.5);
  CHECK(m.eval_diag(x, y) == std::vector<double>{0.25, 0.5});

  // k < 1 flips which entry carries the norm.
  const CStarMetric half = make_diag_metric(0.5);
  CHECK(half.norm(x, y) == 0.25);

  CHECK_THROWS_AS(make_diag_metric(0.0), NonPositiveK);
  CHECK_THROWS_AS(make_diag_metric(-3.0), NonPositiveK);
  CHECK_THROWS_AS(m.eval(Point::grid({1.0, 2.0}), y), PointMismatch);
}

TEST_CASE("multiplication metric is the diagonal of grid differences") {
  const CStarMetric m = make_multiplication_metric(3);
  const Point f = Point::grid({0.0, 2.0, -1.0});
  const Point g = Point::grid({1.0, -1.0, -1.0});
  const Matrix d = m.eval(f, g);
  CHECK(d.at(0, 0) == Complex(1.0));
  CHECK(d.at(1, 1) == Complex(3.0));
  CHECK(d.at(2, 2) == Complex(0.0));
  CHECK(m.norm(f, g) == 3.0);

  CHECK_THROWS_AS(make_multiplication_metric(1), GridTooSmall);
  CHECK_THROWS_AS(m.eval(Point::grid({1.0}), g), PointMismatch);
  CHECK_THROWS_AS(m.norm(Point::scalar(1.0), g), PointMismatch);
}

TEST_CASE("custom metric falls back to the eigensolver norm") {
  const CStarMetric diag = make_diag_metric(3.0);
  const CStarMetric wrapped = make_custom_metric(2, diag.eval);
  CHECK_FALSE(wrapped.diagonal);
  const Point x = Point::scalar(1.0), y = Point::scalar(-0.5);
  CHECK(wrapped.norm(x, y) == doctest::Approx(4.5).epsilon(1e-12));
  CHECK(wrapped.eval(x, y) == diag.eval(x, y));
}

TEST_CASE("axiom sweep passes on a well-behaved metric") {
  const CStarMetric m = make_diag_metric(2.0);
  const auto pts = scalar_points({-5.0, -2.0, -0.5, 0.0, 0.75, 1.0, 3.25, 7.0});
  const AxiomReport report = verify_axioms(m, pts);
  CHECK(report.all_pass());
  CHECK(report.warnings.empty());
  for (int i = 0; i < 4; ++i) {
    CHECK(report.axioms[i].axiom == i + 1);
    CHECK(report.axioms[i].pass);
    CHECK_FALSE(report.axioms[i].witness.has_value());
  }
}

TEST_CASE("axiom sweep warns about distinct points at near-zero distance") {
  const CStarMetric m = make_diag_metric(1.0);
  const auto pts = scalar_points({1.0, 1.0 + 5e-11, 2.0});
  const AxiomReport report = verify_axioms(m, pts);
  CHECK(report.all_pass());  // indistinguishable points are a warning only
  CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("axiom sweep pins failures on the right axiom with a witness") {
  const auto pts = scalar_points({-2.0, 0.0, 1.0, 3.0});

  SUBCASE("signed distances break positivity") {
    const CStarMetric m = make_custom_metric(
        1, [](const Point& x, const Point& y) {
          Matrix d(1);
          d.at(0, 0) = x.as_scalar() - y.as_scalar();
          return d;
        });
    const AxiomReport report = verify_axioms(m, pts);
    CHECK_FALSE(report.axioms[0].pass);
    REQUIRE(report.axioms[0].witness.has_value());
    const auto& w = *report.axioms[0].witness;
    CHECK(w.x.as_scalar() < w.y.as_scalar());
  }

  SUBCASE("a constant offset breaks the identity axiom") {
    const CStarMetric m = make_custom_metric(
        1, [](const Point& x, const Point& y) {
          Matrix d(1);
          d.at(0, 0) = std::abs(x.as_scalar() - y.as_scalar()) + 0.1;
          return d;
        });
    const AxiomReport report = verify_axioms(m, pts);
    CHECK_FALSE(report.axioms[1].pass);
    REQUIRE(report.axioms[1].witness.has_value());
    CHECK(report.axioms[1].witness->x == report.axioms[1].witness->y);
  }

  SUBCASE("an order-dependent scale breaks symmetry") {
    const CStarMetric m = make_custom_metric(
        1, [](const Point& x, const Point& y) {
          const double gap = std::abs(x.as_scalar() - y.as_scalar());
          Matrix d(1);
          d.at(0, 0) = x.as_scalar() < y.as_scalar() ? 2.0 * gap : gap;
          return d;
        });
    const AxiomReport report = verify_axioms(m, pts);
    CHECK_FALSE(report.axioms[2].pass);
    CHECK(report.axioms[2].witness.has_value());
  }

  SUBCASE("squared distances break the triangle inequality") {
    const CStarMetric m = make_custom_metric(
        1, [](const Point& x, const Point& y) {
          const double gap = x.as_scalar() - y.as_scalar();
          Matrix d(1);
          d.at(0, 0) = gap * gap;
          return d;
        });
    const AxiomReport report = verify_axioms(m, pts);
    CHECK_FALSE(report.axioms[3].pass);
    REQUIRE(report.axioms[3].witness.has_value());
    CHECK(report.axioms[3].witness->z.has_value());
  }
}

TEST_CASE("cauchy surrogate accepts geometric traces and rejects oscillation") {
  const CStarMetric m = make_diag_metric(2.0);

  std::vector<Point> geometric;
  for (int n = 0; n < 64; ++n) geometric.push_back(Point::scalar(std::ldexp(1.0, -n)));
  CHECK(is_cauchy(geometric, m));
  CHECK(converges_to(geometric, Point::scalar(0.0), m));
  CHECK_FALSE(converges_to(geometric, Point::scalar(0.5), m));

  std::vector<Point> flip;
  for (int n = 0; n < 64; ++n) flip.push_back(Point::scalar(n % 2 ? 1.0 : 0.0));
  CHECK_FALSE(is_cauchy(flip, m));

  // A slow harmonic tail only looks Cauchy at a loose tolerance.
  std::vector<Point> harmonic;
  for (int n = 1; n <= 256; ++n) harmonic.push_back(Point::scalar(1.0 / n));
  CHECK_FALSE(is_cauchy(harmonic, m));
  Tolerances loose;
  loose.conv_tol = 1e-3;
  CHECK(is_cauchy(harmonic, m, loose));
}

TEST_CASE("trace-length preconditions") {
  const CStarMetric m = make_diag_metric(1.0);
  std::vector<Point> short_trace(10, Point::scalar(0.0));
  CHECK_THROWS_AS(is_cauchy(short_trace, m), TraceTooShort);       // window 16
  CHECK_THROWS_AS(is_cauchy(short_trace, m, {}, 0), TraceTooShort);
  CHECK(is_cauchy(short_trace, m, {}, 4));
  std::vector<Point> empty;
  CHECK_THROWS_AS(converges_to(empty, Point::scalar(0.0), m), TraceTooShort);
}

TEST_CASE("subset specs carry membership predicates") {
  SubsetSpec unit;
  unit.asserted_complete = true;
  unit.contains = [](const Point& p) {
    const double x = p.as_scalar();
    return 0.0 <= x && x <= 1.0;
  };
  CHECK(unit.contains(Point::scalar(0.0)));
  CHECK_FALSE(unit.contains(Point::scalar(1.5)));
}
