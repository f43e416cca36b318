#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cstarfix/matrix.hpp"
#include "cstarfix/metric.hpp"
#include "cstarfix/point.hpp"
#include "cstarfix/tolerances.hpp"

namespace cstarfix {

using Mapping = std::function<Point(const Point&)>;

/// A pair of self-maps of the space. s_section, when present, is a right
/// inverse of s on the range of t: s(s_section(y)) == y up to conv_tol.
/// The Jungck iteration needs it to realise S x_n = T x_{n-1}.
struct MappingPair {
  Mapping t;
  Mapping s;
  std::optional<Mapping> s_section;
};

enum class CertKind {
  ConjugateContraction,   // d(Tx, Sy)  <= a* d(x, y)  a,  ||a|| < 1
  JungckContraction,      // d(Tx, Ty)  <= a* d(Sx, Sy) a, ||a|| < 1
  KannanContraction,      // d(Tx, Ty)  <= a d(Tx, Sx) + a d(Ty, Sy)
  ChatterjeaContraction,  // d(Tx, Ty)  <= a d(Tx, Sy) + a d(Sx, Ty)
  NormContraction,        // ||d(Tx, Sy)|| <= bound * ||d(x, y)||
};

const char* cert_kind_name(CertKind kind);

/// Result of sampling a contraction condition. max_violation is the worst
/// positivity deficit of (rhs - lhs) across checked pairs, normalised so a
/// passing certificate always has max_violation <= 0.
struct ContractionCertificate {
  CertKind kind = CertKind::NormContraction;
  Matrix a;                // empty for NormContraction
  double norm_bound = 0.0; // NormContraction only
  int checked_pairs = 0;
  double max_violation = 0.0;
  bool pass = false;
  std::optional<std::pair<Point, Point>> witness;  // worst pair
};

struct IterationTrace {
  std::vector<Point> points;
  std::vector<Point> s_points;  // S-images along a Jungck run, else empty
  std::vector<double> step_norms;
  std::vector<double> bound_norms;  // a-priori geometric bound per step
};

enum class SolveStatus { Converged, MaxIterations, DivergenceDetected };

const char* solve_status_name(SolveStatus status);

struct SolveOutcome {
  SolveStatus status = SolveStatus::MaxIterations;
  std::optional<Point> point;
  std::optional<double> residual_t;             // ||d(T x*, x*)||
  std::optional<double> residual_s;             // ||d(S x*, x*)||
  std::optional<double> coincidence_residual;   // ||d(T q, S q)||
  std::optional<double> base_map_residual;      // power iteration only
  std::optional<Point> common_fixed_point;      // promoted coincidence value
  std::optional<ContractionCertificate> certificate;
  IterationTrace trace;
  int iterations = 0;
  std::vector<std::string> notes;
};

using PairSample = std::vector<std::pair<Point, Point>>;

/// Deterministic sample of scalar pairs: a lattice over [lo, hi] (including
/// every diagonal pair x == y), near-coincidence pairs at offset 1e-6 of the
/// range, then uniform random pairs up to `count`.
PairSample make_scalar_pair_sample(std::size_t count, double lo, double hi,
                                   std::uint64_t seed);

/// Deterministic sample of grid-function pairs: low-order trigonometric
/// profiles with random coefficients in [-amplitude, amplitude], plus a few
/// equal pairs.
PairSample make_grid_pair_sample(std::size_t count, int grid_size,
                                 double amplitude, std::uint64_t seed);

// Condition checkers. Each samples its inequality over the supplied pairs
// and reports the worst violation with a witness. Preconditions:
//   conjugate / jungck: ||a|| < 1            (NormTooLarge)
//   kannan / chatterjea: a positive, scalar multiple of the identity,
//                        ||a|| < 1/2          (BadCoefficient)
//   norm: bound in (0, 1)                     (BadBound)
ContractionCertificate check_conjugate_contraction(const MappingPair& pair,
                                                   const CStarMetric& metric,
                                                   const Matrix& a,
                                                   const PairSample& sample,
                                                   const Tolerances& tol = {});
ContractionCertificate check_jungck_contraction(const MappingPair& pair,
                                                const CStarMetric& metric,
                                                const Matrix& a,
                                                const PairSample& sample,
                                                const Tolerances& tol = {});
ContractionCertificate check_kannan_contraction(const MappingPair& pair,
                                                const CStarMetric& metric,
                                                const Matrix& a,
                                                const PairSample& sample,
                                                const Tolerances& tol = {});
ContractionCertificate check_chatterjea_contraction(const MappingPair& pair,
                                                    const CStarMetric& metric,
                                                    const Matrix& a,
                                                    const PairSample& sample,
                                                    const Tolerances& tol = {});
ContractionCertificate check_norm_contraction(const MappingPair& pair,
                                              const CStarMetric& metric,
                                              double norm_bound,
                                              const PairSample& sample,
                                              const Tolerances& tol = {});

/// Alternating iteration x_{2n+1} = T x_{2n}, x_{2n+2} = S x_{2n+1}.
/// step_norms[n] = ||d(x_{n+1}, x_n)||; bound_norms[n] = ||a||^{2n} *
/// step_norms[0]. Stops once a step falls within conv_tol and both
/// fixed-point residuals verify within 10*conv_tol; otherwise keeps going
/// until max_iter (MaxIterations) or until a non-finite iterate or a step
/// exceeding 1e6 times the first step (DivergenceDetected).
SolveOutcome solve_alternating(const MappingPair& pair, const CStarMetric& metric,
                               const Matrix& a, const Point& x0,
                               const Tolerances& tol = {}, int max_iter = 10000);

/// Same iteration with an explicit per-step geometric ratio for the a-priori
/// bounds (used by norm-contraction setups where no matrix coefficient
/// exists).
SolveOutcome solve_alternating(const MappingPair& pair, const CStarMetric& metric,
                               double step_ratio, const Point& x0,
                               const Tolerances& tol = {}, int max_iter = 10000);

/// Jungck iteration S x_n = T x_{n-1}, realised through pair.s_section
/// (NoSection when absent or broken at the start point). Convergence is
/// declared at q when the monitored steps ||d(S x_{n+1}, S x_n)|| fall
/// within conv_tol and ||d(T q, S q)|| verifies within 10*conv_tol. When T
/// and S additionally commute at q (weak compatibility), the common value
/// z = T q is verified as the common fixed point and reported.
/// cert must be one of JungckContraction, KannanContraction,
/// ChatterjeaContraction (BadCertificate); it fixes the geometric ratio:
/// ||a||^2 for the first, ||(1-a)^{-1} a|| for the other two.
SolveOutcome solve_jungck(const MappingPair& pair, const CStarMetric& metric,
                          const ContractionCertificate& cert, const Point& x0,
                          const Tolerances& tol = {}, int max_iter = 10000);

/// Runs solve_alternating on the pair (T^m, T^n); on convergence verifies
/// that the fixed point also satisfies ||d(T x*, x*)|| <= 10*conv_tol
/// (reported in base_map_residual; failure downgrades the status).
SolveOutcome solve_power_iterate(const Mapping& t, const CStarMetric& metric,
                                 const Matrix& a, int m, int n, const Point& x0,
                                 const Tolerances& tol = {}, int max_iter = 10000);

struct CompatibilityReport {
  enum class Verdict { Compatible, Incompatible, Vacuous };
  Verdict verdict = Verdict::Vacuous;
  std::vector<double> commutator_norms;  // ||d(TS x_n, ST x_n)|| per n
  double tail_norm = 0.0;
  std::string detail;
};

const char* compat_verdict_name(CompatibilityReport::Verdict verdict);

/// Compatibility test along a sequence: first verifies T x_n and S x_n
/// approach a common limit (otherwise Vacuous), then inspects whether
/// ||d(TS x_n, ST x_n)|| tends to zero.
CompatibilityReport check_compatible(const MappingPair& pair,
                                     const CStarMetric& metric,
                                     std::span<const Point> seq,
                                     const Tolerances& tol = {});

struct WeakCompatibilityEntry {
  Point point;
  double coincidence_residual = 0.0;
  double commutator_norm = 0.0;
  bool commutes = false;
};

struct WeakCompatibilityReport {
  std::vector<WeakCompatibilityEntry> entries;
  bool all_commute = true;
};

/// Checks that T and S commute at each supplied coincidence point. Throws
/// NotACoincidencePoint when ||d(Tx, Sx)|| exceeds 10*conv_tol for some
/// input point.
WeakCompatibilityReport check_weakly_compatible(const MappingPair& pair,
                                                const CStarMetric& metric,
                                                std::span<const Point> coincidence_points,
                                                const Tolerances& tol = {});

}  // namespace cstarfix
