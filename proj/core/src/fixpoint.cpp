#include "cstarfix/fixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

namespace cstarfix {

const char* cert_kind_name(CertKind kind) {
  switch (kind) {
    case CertKind::ConjugateContraction: return "conjugate_contraction";
    case CertKind::JungckContraction: return "jungck_contraction";
    case CertKind::KannanContraction: return "kannan_contraction";
    case CertKind::ChatterjeaContraction: return "chatterjea_contraction";
    case CertKind::NormContraction: return "norm_contraction";
  }
  return "unknown";
}

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterations: return "max_iterations";
    case SolveStatus::DivergenceDetected: return "divergence_detected";
  }
  return "unknown";
}

const char* compat_verdict_name(CompatibilityReport::Verdict verdict) {
  switch (verdict) {
    case CompatibilityReport::Verdict::Compatible: return "compatible";
    case CompatibilityReport::Verdict::Incompatible: return "incompatible";
    case CompatibilityReport::Verdict::Vacuous: return "vacuous";
  }
  return "unknown";
}

PairSample make_scalar_pair_sample(std::size_t count, double lo, double hi,
                                   std::uint64_t seed) {
  if (!(lo < hi)) throw Error("make_scalar_pair_sample: need lo < hi");
  PairSample sample;
  sample.reserve(count);
  constexpr int kLattice = 16;
  const double span = hi - lo;
  std::vector<double> lattice(kLattice);
  for (int i = 0; i < kLattice; ++i)
    lattice[static_cast<std::size_t>(i)] = lo + span * i / (kLattice - 1);
  // All ordered lattice pairs; the diagonal gives the x == y cases.
  for (double x : lattice)
    for (double y : lattice) {
      if (sample.size() >= count) return sample;
      sample.emplace_back(Point::scalar(x), Point::scalar(y));
    }
  // Near-coincidence pairs.
  const double eps = 1e-6 * span;
  for (double x : lattice) {
    if (sample.size() >= count) return sample;
    sample.emplace_back(Point::scalar(x), Point::scalar(x + eps));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  while (sample.size() < count)
    sample.emplace_back(Point::scalar(dist(rng)), Point::scalar(dist(rng)));
  return sample;
}

PairSample make_grid_pair_sample(std::size_t count, int grid_size,
                                 double amplitude, std::uint64_t seed) {
  if (grid_size < 2) throw GridTooSmall("make_grid_pair_sample: N >= 2");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  auto random_profile = [&]() {
    double c0 = dist(rng), c1 = dist(rng), c2 = dist(rng), c3 = dist(rng);
    std::vector<double> f(static_cast<std::size_t>(grid_size));
    for (int i = 0; i < grid_size; ++i) {
      const double t = static_cast<double>(i) / (grid_size - 1);
      f[static_cast<std::size_t>(i)] = c0 + c1 * std::sin(3.14159265358979323846 * t) +
                                       c2 * std::sin(2 * 3.14159265358979323846 * t) +
                                       c3 * t;
    }
    return f;
  };
  PairSample sample;
  sample.reserve(count);
  while (sample.size() < count) {
    std::vector<double> f = random_profile();
    if (sample.size() % 8 == 7) {
      sample.emplace_back(Point::grid(f), Point::grid(f));  // equal pair
    } else {
      sample.emplace_back(Point::grid(std::move(f)), Point::grid(random_profile()));
    }
  }
  return sample;
}

namespace {

// Worst positivity deficit of (rhs - lhs) over the sample, with witnesses.
template <typename LhsFn, typename RhsFn>
ContractionCertificate sample_matrix_condition(CertKind kind, const Matrix& a,
                                               const PairSample& sample,
                                               const Tolerances& tol, LhsFn&& lhs_fn,
                                               RhsFn&& rhs_fn) {
  ContractionCertificate cert;
  cert.kind = kind;
  cert.a = a;
  cert.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : sample) {
    const Matrix diff = rhs_fn(x, y) - lhs_fn(x, y);
    const double violation = positivity_violation(diff, tol);
    ++cert.checked_pairs;
    if (violation > cert.max_violation) {
      cert.max_violation = violation;
      cert.witness = std::make_pair(x, y);
    }
  }
  if (cert.checked_pairs == 0) cert.max_violation = 0.0;
  cert.pass = cert.max_violation <= 0.0;
  if (cert.pass) cert.witness.reset();
  return cert;
}

void require_contraction_norm(const Matrix& a, const Tolerances& tol) {
  const double na = operator_norm(a, tol);
  if (!(na < 1.0))
    throw NormTooLarge("coefficient norm " + std::to_string(na) + " is not < 1");
}

void require_kannan_coefficient(const Matrix& a, const Tolerances& tol) {
  if (!is_positive(a, tol))
    throw BadCoefficient("coefficient must be positive");
  if (!in_commutant(a, tol))
    throw BadCoefficient("coefficient must commute with the whole algebra");
  const double na = operator_norm(a, tol);
  if (!(na < 0.5))
    throw BadCoefficient("coefficient norm " + std::to_string(na) + " is not < 1/2");
}

}  // namespace

ContractionCertificate check_conjugate_contraction(const MappingPair& pair,
                                                   const CStarMetric& metric,
                                                   const Matrix& a,
                                                   const PairSample& sample,
                                                   const Tolerances& tol) {
  tol.validate();
  require_contraction_norm(a, tol);
  const Matrix a_star = adjoint(a);
  return sample_matrix_condition(
      CertKind::ConjugateContraction, a, sample, tol,
      [&](const Point& x, const Point& y) { return metric.eval(pair.t(x), pair.s(y)); },
      [&](const Point& x, const Point& y) { return a_star * metric.eval(x, y) * a; });
}

ContractionCertificate check_jungck_contraction(const MappingPair& pair,
                                                const CStarMetric& metric,
                                                const Matrix& a,
                                                const PairSample& sample,
                                                const Tolerances& tol) {
  tol.validate();
  require_contraction_norm(a, tol);
  const Matrix a_star = adjoint(a);
  return sample_matrix_condition(
      CertKind::JungckContraction, a, sample, tol,
      [&](const Point& x, const Point& y) { return metric.eval(pair.t(x), pair.t(y)); },
      [&](const Point& x, const Point& y) {
        return a_star * metric.eval(pair.s(x), pair.s(y)) * a;
      });
}

ContractionCertificate check_kannan_contraction(const MappingPair& pair,
                                                const CStarMetric& metric,
                                                const Matrix& a,
                                                const PairSample& sample,
                                                const Tolerances& tol) {
  tol.validate();
  require_kannan_coefficient(a, tol);
  return sample_matrix_condition(
      CertKind::KannanContraction, a, sample, tol,
      [&](const Point& x, const Point& y) { return metric.eval(pair.t(x), pair.t(y)); },
      [&](const Point& x, const Point& y) {
        return a * metric.eval(pair.t(x), pair.s(x)) +
               a * metric.eval(pair.t(y), pair.s(y));
      });
}

ContractionCertificate check_chatterjea_contraction(const MappingPair& pair,
                                                    const CStarMetric& metric,
                                                    const Matrix& a,
                                                    const PairSample& sample,
                                                    const Tolerances& tol) {
  tol.validate();
  require_kannan_coefficient(a, tol);
  return sample_matrix_condition(
      CertKind::ChatterjeaContraction, a, sample, tol,
      [&](const Point& x, const Point& y) { return metric.eval(pair.t(x), pair.t(y)); },
      [&](const Point& x, const Point& y) {
        return a * metric.eval(pair.t(x), pair.s(y)) +
               a * metric.eval(pair.s(x), pair.t(y));
      });
}

ContractionCertificate check_norm_contraction(const MappingPair& pair,
                                              const CStarMetric& metric,
                                              double norm_bound,
                                              const PairSample& sample,
                                              const Tolerances& tol) {
  tol.validate();
  if (!(norm_bound > 0.0 && norm_bound < 1.0))
    throw BadBound("norm bound must lie in (0, 1)");
  ContractionCertificate cert;
  cert.kind = CertKind::NormContraction;
  cert.norm_bound = norm_bound;
  cert.max_violation = -std::numeric_limits<double>::infinity();
  for (const auto& [x, y] : sample) {
    const double lhs = metric.norm(pair.t(x), pair.s(y));
    const double rhs = norm_bound * metric.norm(x, y);
    const double violation = lhs - rhs - tol.eq_tol * (1.0 + metric.norm(x, y));
    ++cert.checked_pairs;
    if (violation > cert.max_violation) {
      cert.max_violation = violation;
      cert.witness = std::make_pair(x, y);
    }
  }
  if (cert.checked_pairs == 0) cert.max_violation = 0.0;
  cert.pass = cert.max_violation <= 0.0;
  if (cert.pass) cert.witness.reset();
  return cert;
}

namespace {

// Shared alternating loop. `step_ratio` is the per-step geometric factor of
// the a-priori bounds; divergence triggers on non-finite iterates or steps
// blowing past 1e6 times the first step.
SolveOutcome alternating_core(const Mapping& t, const Mapping& s,
                              const CStarMetric& metric, double step_ratio,
                              const Point& x0, const Tolerances& tol, int max_iter) {
  tol.validate();
  if (max_iter < 1) throw Error("solver: max_iter must be >= 1");
  SolveOutcome out;
  out.trace.points.push_back(x0);
  if (!x0.finite()) {
    out.status = SolveStatus::DivergenceDetected;
    out.notes.push_back("start point is not finite");
    return out;
  }
  Point x = x0;
  double bound = 0.0;
  bool have_bound = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Point next = (iter % 2 == 0) ? t(x) : s(x);
    ++out.iterations;
    if (!next.finite()) {
      out.trace.points.push_back(next);
      out.status = SolveStatus::DivergenceDetected;
      out.notes.push_back("non-finite iterate at step " + std::to_string(iter + 1));
      return out;
    }
    const double step = metric.norm(next, x);
    out.trace.points.push_back(next);
    out.trace.step_norms.push_back(step);
    if (!have_bound) {
      bound = step;  // ||d(x_1, x_0)||
      have_bound = true;
    }
    out.trace.bound_norms.push_back(bound);
    bound *= step_ratio;
    const double first = out.trace.step_norms.front();
    if (first > 0.0 && step > 1e6 * first) {
      out.status = SolveStatus::DivergenceDetected;
      out.notes.push_back("step norm exceeded 1e6 times the first step");
      out.point = next;
      return out;
    }
    x = next;
    if (step <= tol.conv_tol) {
      const double rt = metric.norm(t(x), x);
      const double rs = metric.norm(s(x), x);
      if (rt <= 10.0 * tol.conv_tol && rs <= 10.0 * tol.conv_tol) {
        out.status = SolveStatus::Converged;
        out.point = x;
        out.residual_t = rt;
        out.residual_s = rs;
        return out;
      }
      // Step criterion fired but the candidate does not verify; keep going.
    }
  }
  out.status = SolveStatus::MaxIterations;
  out.point = x;
  out.residual_t = metric.norm(t(x), x);
  out.residual_s = metric.norm(s(x), x);
  return out;
}

}  // namespace

SolveOutcome solve_alternating(const MappingPair& pair, const CStarMetric& metric,
                               double step_ratio, const Point& x0,
                               const Tolerances& tol, int max_iter) {
  return alternating_core(pair.t, pair.s, metric, step_ratio, x0, tol, max_iter);
}

SolveOutcome solve_alternating(const MappingPair& pair, const CStarMetric& metric,
                               const Matrix& a, const Point& x0,
                               const Tolerances& tol, int max_iter) {
  const double na = operator_norm(a, tol);
  return alternating_core(pair.t, pair.s, metric, na * na, x0, tol, max_iter);
}

SolveOutcome solve_jungck(const MappingPair& pair, const CStarMetric& metric,
                          const ContractionCertificate& cert, const Point& x0,
                          const Tolerances& tol, int max_iter) {
  tol.validate();
  if (max_iter < 1) throw Error("solver: max_iter must be >= 1");
  if (!pair.s_section) throw NoSection("solve_jungck: pair has no s_section");
  const Mapping& section = *pair.s_section;

  double ratio = 0.0;
  switch (cert.kind) {
    case CertKind::JungckContraction: {
      const double na = operator_norm(cert.a, tol);
      ratio = na * na;
      break;
    }
    case CertKind::KannanContraction:
    case CertKind::ChatterjeaContraction: {
      const Matrix inv = neumann_inverse_one_minus(cert.a, tol);
      ratio = operator_norm(inv * cert.a, tol);
      break;
    }
    default:
      throw BadCertificate("solve_jungck: certificate kind " +
                           std::string(cert_kind_name(cert.kind)) +
                           " is not a coincidence-point condition");
  }

  SolveOutcome out;
  out.certificate = cert;
  out.trace.points.push_back(x0);
  if (!x0.finite()) {
    out.status = SolveStatus::DivergenceDetected;
    out.notes.push_back("start point is not finite");
    return out;
  }

  // Lazy section sanity check at the first image: S(section(y)) must return y.
  {
    const Point y0 = pair.t(x0);
    const double err = metric.norm(pair.s(section(y0)), y0);
    if (err > std::max(tol.conv_tol, 1e-10))
      throw NoSection("solve_jungck: s_section fails at the first image, error " +
                      std::to_string(err));
  }

  Point x = x0;
  Point sx = pair.s(x0);
  out.trace.s_points.push_back(sx);
  double bound = 0.0;
  bool have_bound = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Point y = pair.t(x);      // target value: S x_next = y
    const Point x_next = section(y);
    const Point sx_next = pair.s(x_next);
    ++out.iterations;
    if (!x_next.finite() || !sx_next.finite()) {
      out.trace.points.push_back(x_next);
      out.status = SolveStatus::DivergenceDetected;
      out.notes.push_back("non-finite iterate at step " + std::to_string(iter + 1));
      return out;
    }
    const double step = metric.norm(sx_next, sx);
    out.trace.points.push_back(x_next);
    out.trace.s_points.push_back(sx_next);
    out.trace.step_norms.push_back(step);
    if (!have_bound) {
      bound = step;
      have_bound = true;
    }
    out.trace.bound_norms.push_back(bound);
    bound *= ratio;
    const double first = out.trace.step_norms.front();
    if (first > 0.0 && step > 1e6 * first) {
      out.status = SolveStatus::DivergenceDetected;
      out.notes.push_back("step norm exceeded 1e6 times the first step");
      out.point = x_next;
      return out;
    }
    x = x_next;
    sx = sx_next;
    if (step <= tol.conv_tol) {
      const double cr = metric.norm(pair.t(x), pair.s(x));
      if (cr <= 10.0 * tol.conv_tol) {
        out.status = SolveStatus::Converged;
        out.point = x;
        out.coincidence_residual = cr;
        // Weak compatibility at the coincidence point promotes the common
        // value z = T q to the common fixed point.
        const double commut = metric.norm(pair.t(pair.s(x)), pair.s(pair.t(x)));
        if (commut <= 10.0 * tol.conv_tol) {
          const Point z = pair.t(x);
          const double rt = metric.norm(pair.t(z), z);
          const double rs = metric.norm(pair.s(z), z);
          if (rt <= 10.0 * tol.conv_tol && rs <= 10.0 * tol.conv_tol) {
            out.common_fixed_point = z;
            out.residual_t = rt;
            out.residual_s = rs;
          } else {
            out.notes.push_back("coincidence value failed fixed-point residuals");
          }
        } else {
          out.notes.push_back("mappings do not commute at the coincidence point");
        }
        return out;
      }
    }
  }
  out.status = SolveStatus::MaxIterations;
  out.point = x;
  out.coincidence_residual = metric.norm(pair.t(x), pair.s(x));
  return out;
}

SolveOutcome solve_power_iterate(const Mapping& t, const CStarMetric& metric,
                                 const Matrix& a, int m, int n, const Point& x0,
                                 const Tolerances& tol, int max_iter) {
  if (m < 1 || n < 1) throw Error("solve_power_iterate: powers must be >= 1");
  auto power = [&t](int times) {
    return Mapping([&t, times](const Point& p) {
      Point v = p;
      for (int i = 0; i < times; ++i) v = t(v);
      return v;
    });
  };
  const double na = operator_norm(a, tol);
  SolveOutcome out =
      alternating_core(power(m), power(n), metric, na * na, x0, tol, max_iter);
  if (out.status == SolveStatus::Converged && out.point) {
    const double base = metric.norm(t(*out.point), *out.point);
    out.base_map_residual = base;
    if (base > 10.0 * tol.conv_tol) {
      out.status = SolveStatus::DivergenceDetected;
      out.notes.push_back(
          "iterated powers stabilised but the map's own residual fails; "
          "the contraction hypothesis cannot hold");
    }
  }
  return out;
}

CompatibilityReport check_compatible(const MappingPair& pair,
                                     const CStarMetric& metric,
                                     std::span<const Point> seq,
                                     const Tolerances& tol) {
  tol.validate();
  CompatibilityReport report;
  if (seq.size() < 4) {
    report.verdict = CompatibilityReport::Verdict::Vacuous;
    report.detail = "sequence too short to estimate limits";
    return report;
  }
  std::vector<Point> t_img, s_img;
  t_img.reserve(seq.size());
  s_img.reserve(seq.size());
  for (const Point& x : seq) {
    t_img.push_back(pair.t(x));
    s_img.push_back(pair.s(x));
  }
  auto tail_threshold = [&](double first) {
    return std::max(100.0 * tol.conv_tol, 1e-3 * (1.0 + first));
  };
  // The images must approach a common limit, else the test says nothing.
  const double gamma_first = metric.norm(t_img.front(), s_img.front());
  const double gamma_last = metric.norm(t_img.back(), s_img.back());
  const double tau_first = metric.norm(t_img[1], t_img[0]);
  const double tau_last = metric.norm(t_img[t_img.size() - 1], t_img[t_img.size() - 2]);
  const double sigma_first = metric.norm(s_img[1], s_img[0]);
  const double sigma_last = metric.norm(s_img[s_img.size() - 1], s_img[s_img.size() - 2]);
  if (gamma_last > tail_threshold(gamma_first) ||
      tau_last > tail_threshold(tau_first) || sigma_last > tail_threshold(sigma_first)) {
    report.verdict = CompatibilityReport::Verdict::Vacuous;
    report.detail = "T and S images do not approach a common limit along the sequence";
    return report;
  }
  report.commutator_norms.reserve(seq.size());
  for (const Point& x : seq)
    report.commutator_norms.push_back(
        metric.norm(pair.t(pair.s(x)), pair.s(pair.t(x))));
  report.tail_norm = report.commutator_norms.back();
  const double c_first = report.commutator_norms.front();
  if (report.tail_norm <= tail_threshold(c_first)) {
    report.verdict = CompatibilityReport::Verdict::Compatible;
    report.detail = "commutator norms vanish along the sequence";
  } else {
    report.verdict = CompatibilityReport::Verdict::Incompatible;
    report.detail = "commutator norms stay at " + std::to_string(report.tail_norm) +
                    " although both images converge";
  }
  return report;
}

WeakCompatibilityReport check_weakly_compatible(const MappingPair& pair,
                                                const CStarMetric& metric,
                                                std::span<const Point> coincidence_points,
                                                const Tolerances& tol) {
  tol.validate();
  WeakCompatibilityReport report;
  for (const Point& x : coincidence_points) {
    WeakCompatibilityEntry entry;
    entry.point = x;
    entry.coincidence_residual = metric.norm(pair.t(x), pair.s(x));
    if (entry.coincidence_residual > 10.0 * tol.conv_tol)
      throw NotACoincidencePoint("check_weakly_compatible: ||d(Tx, Sx)|| = " +
                                 std::to_string(entry.coincidence_residual) +
                                 " at a supposed coincidence point");
    entry.commutator_norm = metric.norm(pair.t(pair.s(x)), pair.s(pair.t(x)));
    entry.commutes = entry.commutator_norm <= 10.0 * tol.conv_tol;
    if (!entry.commutes) report.all_commute = false;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace cstarfix
