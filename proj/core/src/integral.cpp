#include "cstarfix/integral.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace cstarfix {

const char* kernel_family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::Linear: return "linear";
    case KernelFamily::BoundedNonlinear: return "bounded_nonlinear";
    case KernelFamily::Custom: return "custom";
  }
  return "unknown";
}

double KernelSpec::eval(double t, double s, double u) const {
  const double f = phi ? phi(t, s) : 1.0;
  switch (family) {
    case KernelFamily::Linear:
      return c * f * u;
    case KernelFamily::BoundedNonlinear:
      return c * f * u / (1.0 + u * u);
    case KernelFamily::Custom:
      if (!custom) throw InvalidKernel("custom kernel has no evaluator");
      return custom(t, s, u);
  }
  throw InvalidKernel("unknown kernel family");
}

namespace {

void validate_kernel(const KernelSpec& k, const GridProblem& p, const char* name) {
  if (!(k.k_lip > 0.0 && k.k_lip < 1.0))
    throw InvalidKernel(std::string(name) + ": k_lip must lie in (0, 1)");
  if (!k.g) throw InvalidKernel(std::string(name) + ": missing inhomogeneity g");
  for (double t : p.nodes) {
    if (!std::isfinite(k.g(t)))
      throw InvalidKernel(std::string(name) + ": g not finite on the grid");
    for (double s : p.nodes) {
      const double f = k.phi ? k.phi(t, s) : 1.0;
      if (!std::isfinite(f))
        throw InvalidKernel(std::string(name) + ": phi not finite on the grid");
      if (f < 0.0)
        throw InvalidKernel(std::string(name) + ": phi negative at (t, s) = (" +
                            std::to_string(t) + ", " + std::to_string(s) + ")");
    }
  }
}

// Pairwise sum of v[lo, hi): deterministic association independent of any
// accumulation order the optimiser might otherwise pick.
double pairwise_sum(std::span<const double> v, std::size_t lo, std::size_t hi) {
  const std::size_t len = hi - lo;
  if (len <= 4) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += v[i];
    return acc;
  }
  const std::size_t mid = lo + len / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

}  // namespace

GridProblem make_grid_problem(int grid_size, KernelSpec k1, KernelSpec k2) {
  if (grid_size < 2) throw GridTooSmall("make_grid_problem: need N >= 2");
  GridProblem p;
  p.n = grid_size;
  p.nodes.resize(static_cast<std::size_t>(grid_size));
  p.weights.resize(static_cast<std::size_t>(grid_size));
  const double h = 1.0 / (grid_size - 1);
  for (int i = 0; i < grid_size; ++i)
    p.nodes[static_cast<std::size_t>(i)] = static_cast<double>(i) / (grid_size - 1);
  for (int i = 0; i < grid_size; ++i)
    p.weights[static_cast<std::size_t>(i)] =
        (i == 0 || i == grid_size - 1) ? h / 2.0 : h;
  if (k1.k_lip != k2.k_lip)
    throw InvalidKernel("kernels carry different Lipschitz constants");
  validate_kernel(k1, p, "K1");
  validate_kernel(k2, p, "K2");
  p.g.resize(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) p.g[i] = k1.g(p.nodes[i]);
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (std::abs(k2.g(p.nodes[i]) - p.g[i]) > 1e-12)
      throw InvalidKernel("kernels carry different inhomogeneities");
  }
  p.k1 = std::move(k1);
  p.k2 = std::move(k2);
  return p;
}

std::vector<double> default_u_sample(const GridProblem& p) {
  double g_inf = 0.0;
  for (double gi : p.g) g_inf = std::max(g_inf, std::abs(gi));
  const double radius = 2.0 * (g_inf + 1.0) / (1.0 - p.k1.k_lip);
  constexpr int kCount = 33;
  std::vector<double> u(kCount);
  for (int i = 0; i < kCount; ++i)
    u[static_cast<std::size_t>(i)] = -radius + 2.0 * radius * i / (kCount - 1);
  return u;
}

HypothesesReport verify_hypotheses(const GridProblem& p,
                                   std::span<const double> sample_u,
                                   const Tolerances& tol) {
  tol.validate();
  HypothesesReport report;

  // One pass over (t, s): cache both kernels on the u-lattice, then check
  // finiteness and the cross-kernel Lipschitz bound from the cached values.
  // This keeps the cost at nodes^2 * |u| kernel calls instead of
  // nodes^2 * |u|^2.
  double worst = -1.0;
  std::vector<double> k1v(sample_u.size()), k2v(sample_u.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    for (std::size_t j = 0; j < p.nodes.size(); ++j) {
      const double t = p.nodes[i], s = p.nodes[j];
      const double f = p.k1.phi ? p.k1.phi(t, s) : 1.0;
      for (std::size_t a = 0; a < sample_u.size(); ++a) {
        k1v[a] = p.k1.eval(t, s, sample_u[a]);
        k2v[a] = p.k2.eval(t, s, sample_u[a]);
        if (!std::isfinite(k1v[a]) || !std::isfinite(k2v[a])) {
          if (report.integrability.pass) {
            report.integrability.pass = false;
            report.integrability.witness =
                "kernel not finite at (t, s, u) = (" + std::to_string(t) + ", " +
                std::to_string(s) + ", " + std::to_string(sample_u[a]) + ")";
          }
          k1v[a] = 0.0;
          k2v[a] = 0.0;
          continue;
        }
        report.integrability.value = std::max(
            report.integrability.value, std::max(std::abs(k1v[a]), std::abs(k2v[a])));
      }
      for (std::size_t a = 0; a < sample_u.size(); ++a) {
        const double u = sample_u[a];
        for (std::size_t b = 0; b < sample_u.size(); ++b) {
          const double v = sample_u[b];
          const double lhs = std::abs(k1v[a] - k2v[b]);
          const double rhs = p.k1.k_lip * f * std::abs(u - v);
          const double slack = tol.eq_tol * (1.0 + std::abs(u) + std::abs(v));
          const double excess = lhs - rhs - slack;
          if (excess > worst) {
            worst = excess;
            report.lipschitz.value = lhs - rhs;
            if (excess > 0.0)
              report.lipschitz.witness =
                  "(t, s, u, v) = (" + std::to_string(t) + ", " + std::to_string(s) +
                  ", " + std::to_string(u) + ", " + std::to_string(v) + ")";
          }
        }
      }
    }
  }
  for (double gi : p.g) {
    if (!std::isfinite(gi)) {
      report.integrability.pass = false;
      report.integrability.witness = "inhomogeneity not finite on the grid";
    }
  }
  report.lipschitz.pass = worst <= 0.0;
  if (report.lipschitz.pass) {
    report.kernels_coincide_on_sample = true;
    report.note =
        "the cross bound at u == v forces both kernels to agree pointwise";
  }

  // sup_t of the quadrature of phi(t, .) must not exceed one.
  const double h = 1.0 / (p.n - 1);
  const double slack = std::max(100.0 * tol.eq_tol, h * h);
  double sup = 0.0;
  std::size_t sup_at = 0;
  std::vector<double> row(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    for (std::size_t j = 0; j < p.nodes.size(); ++j) {
      const double f = p.k1.phi ? p.k1.phi(p.nodes[i], p.nodes[j]) : 1.0;
      row[j] = p.weights[j] * f;
    }
    const double integral = pairwise_sum(row, 0, row.size());
    if (integral > sup) {
      sup = integral;
      sup_at = i;
    }
  }
  report.kernel_bound.value = sup;
  report.kernel_bound.pass = sup <= 1.0 + slack;
  if (!report.kernel_bound.pass)
    report.kernel_bound.witness = "t = " + std::to_string(p.nodes[sup_at]);
  return report;
}

std::vector<double> apply_operator(const GridProblem& p, int which,
                                   std::span<const double> x) {
  if (which != 1 && which != 2)
    throw Error("apply_operator: kernel selector must be 1 or 2");
  if (x.size() != p.nodes.size())
    throw DimensionMismatch("apply_operator: sample count " +
                            std::to_string(x.size()) + " does not match grid " +
                            std::to_string(p.nodes.size()));
  for (double xi : x)
    if (!std::isfinite(xi)) throw NonFiniteInput("apply_operator: non-finite input");
  const KernelSpec& k = (which == 1) ? p.k1 : p.k2;
  std::vector<double> y(p.nodes.size());
  std::vector<double> row(p.nodes.size());
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    for (std::size_t j = 0; j < p.nodes.size(); ++j)
      row[j] = p.weights[j] * k.eval(p.nodes[i], p.nodes[j], x[j]);
    y[i] = pairwise_sum(row, 0, row.size()) + p.g[i];
  }
  return y;
}

SolveOutcome solve_common(const GridProblem& p, const std::vector<double>& x0,
                          const Tolerances& tol, int max_iter) {
  tol.validate();
  if (x0.size() != p.nodes.size())
    throw DimensionMismatch("solve_common: start point size " +
                            std::to_string(x0.size()) + " does not match grid " +
                            std::to_string(p.nodes.size()));
  const CStarMetric metric = make_multiplication_metric(p.n);
  MappingPair pair;
  pair.t = [&p](const Point& q) { return Point::grid(apply_operator(p, 1, q.samples())); };
  pair.s = [&p](const Point& q) { return Point::grid(apply_operator(p, 2, q.samples())); };
  SolveOutcome out = solve_alternating(pair, metric, p.k1.k_lip,
                                       Point::grid(x0), tol, max_iter);
  double amplitude = 1.0;
  for (double gi : p.g) amplitude = std::max(amplitude, std::abs(gi));
  const PairSample sample =
      make_grid_pair_sample(64, p.n, 2.0 * amplitude, /*seed=*/20240817);
  out.certificate = check_norm_contraction(pair, metric, p.k1.k_lip, sample, tol);
  return out;
}

}  // namespace cstarfix
