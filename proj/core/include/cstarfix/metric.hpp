#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cstarfix/matrix.hpp"
#include "cstarfix/point.hpp"
#include "cstarfix/tolerances.hpp"

namespace cstarfix {

/// A metric taking values in a matrix algebra. eval returns the full
/// distance matrix; norm returns ||d(x,y)|| and is allowed to use a cheaper
/// route. Metrics whose distance matrices are diagonal set `diagonal` and
/// provide eval_diag so order and norm checks stay entrywise instead of
/// running an eigensolver on an N-by-N matrix.
struct CStarMetric {
  int algebra_dim = 0;
  bool diagonal = false;
  std::function<Matrix(const Point&, const Point&)> eval;
  std::function<double(const Point&, const Point&)> norm;
  std::function<std::vector<double>(const Point&, const Point&)> eval_diag;
};

/// Distance between scalars x, y as diag(|x-y|, k*|x-y|), k > 0.
/// ||d(x,y)|| equals max(1,k)*|x-y| exactly.
CStarMetric make_diag_metric(double k);

/// Distance between grid functions f, g as the multiplication operator by
/// |f - g|: an N-by-N diagonal matrix. ||d(f,g)|| is the max-abs grid
/// difference. Requires N >= 2.
CStarMetric make_multiplication_metric(int grid_size);

/// Wraps an arbitrary eval into a metric; the norm falls back to the
/// eigensolver route.
CStarMetric make_custom_metric(int algebra_dim,
                               std::function<Matrix(const Point&, const Point&)> eval,
                               const Tolerances& tol = {});

struct AxiomWitness {
  Point x;
  Point y;
  std::optional<Point> z;
};

struct AxiomResult {
  int axiom = 0;  // 1 positivity, 2 identity, 3 symmetry, 4 triangle
  bool pass = true;
  std::optional<AxiomWitness> witness;
};

struct AxiomReport {
  std::array<AxiomResult, 4> axioms{};
  /// Distinct sample points at near-zero distance. The axiom that a zero
  /// distance forces x == y is not decidable from samples, so these are
  /// surfaced as warnings rather than failures.
  std::vector<std::string> warnings;

  bool all_pass() const {
    for (const auto& r : axioms)
      if (!r.pass) return false;
    return true;
  }
};

/// Checks metric axioms over all pairs (and all triples, for the triangle
/// inequality) drawn from the sample.
AxiomReport verify_axioms(const CStarMetric& m, std::span<const Point> sample,
                          const Tolerances& tol = {});

/// Finite-window Cauchy surrogate: over the final quarter of the trace,
/// every pair at lag <= window is within conv_tol. Requires
/// trace.size() > window (TraceTooShort).
bool is_cauchy(std::span<const Point> trace, const CStarMetric& m,
               const Tolerances& tol = {}, int window = 16);

/// Tail surrogate for convergence: ||d(x_n, limit)|| <= conv_tol over the
/// final quarter of the trace. Requires a nonempty trace.
bool converges_to(std::span<const Point> trace, const Point& limit,
                  const CStarMetric& m, const Tolerances& tol = {});

/// A subset of the space given by a membership predicate. Completeness is
/// not decidable numerically, so it is carried as an assertion; solvers use
/// the predicate only to diagnose limits that escape the subset.
struct SubsetSpec {
  bool asserted_complete = false;
  std::function<bool(const Point&)> contains;
};

}  // namespace cstarfix
