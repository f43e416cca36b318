#include "cstarfix/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cstarfix {

namespace {

double scalar_of(const Point& p, const char* who) {
  if (p.kind != PointKind::RealScalar || p.values.size() != 1)
    throw PointMismatch(std::string(who) + " expects scalar points");
  return p.values[0];
}

const std::vector<double>& samples_of(const Point& p, int n, const char* who) {
  if (p.values.size() != static_cast<std::size_t>(n))
    throw PointMismatch(std::string(who) + " expects points with " +
                        std::to_string(n) + " samples, got " +
                        std::to_string(p.values.size()));
  return p.values;
}

}  // namespace

CStarMetric make_diag_metric(double k) {
  if (!(k > 0.0)) throw NonPositiveK("diag metric requires k > 0");
  CStarMetric m;
  m.algebra_dim = 2;
  m.diagonal = true;
  m.eval = [k](const Point& x, const Point& y) {
    const double r = std::abs(scalar_of(x, "diag metric") - scalar_of(y, "diag metric"));
    const double d[2] = {r, k * r};
    return Matrix::diagonal(d);
  };
  m.eval_diag = [k](const Point& x, const Point& y) {
    const double r = std::abs(scalar_of(x, "diag metric") - scalar_of(y, "diag metric"));
    return std::vector<double>{r, k * r};
  };
  m.norm = [k](const Point& x, const Point& y) {
    const double r = std::abs(scalar_of(x, "diag metric") - scalar_of(y, "diag metric"));
    return std::max(1.0, k) * r;
  };
  return m;
}

CStarMetric make_multiplication_metric(int grid_size) {
  if (grid_size < 2) throw GridTooSmall("multiplication metric requires N >= 2");
  CStarMetric m;
  m.algebra_dim = grid_size;
  m.diagonal = true;
  m.eval = [grid_size](const Point& x, const Point& y) {
    const auto& f = samples_of(x, grid_size, "multiplication metric");
    const auto& g = samples_of(y, grid_size, "multiplication metric");
    std::vector<double> d(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) d[i] = std::abs(f[i] - g[i]);
    return Matrix::diagonal(d);
  };
  m.eval_diag = [grid_size](const Point& x, const Point& y) {
    const auto& f = samples_of(x, grid_size, "multiplication metric");
    const auto& g = samples_of(y, grid_size, "multiplication metric");
    std::vector<double> d(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) d[i] = std::abs(f[i] - g[i]);
    return d;
  };
  m.norm = [grid_size](const Point& x, const Point& y) {
    const auto& f = samples_of(x, grid_size, "multiplication metric");
    const auto& g = samples_of(y, grid_size, "multiplication metric");
    double mx = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) mx = std::max(mx, std::abs(f[i] - g[i]));
    return mx;
  };
  return m;
}

CStarMetric make_custom_metric(int algebra_dim,
                               std::function<Matrix(const Point&, const Point&)> eval,
                               const Tolerances& tol) {
  tol.validate();
  CStarMetric m;
  m.algebra_dim = algebra_dim;
  m.diagonal = false;
  m.eval = std::move(eval);
  m.norm = [eval_fn = m.eval, tol](const Point& x, const Point& y) {
    return operator_norm(eval_fn(x, y), tol);
  };
  return m;
}

AxiomReport verify_axioms(const CStarMetric& m, std::span<const Point> sample,
                          const Tolerances& tol) {
  tol.validate();
  AxiomReport report;
  for (int i = 0; i < 4; ++i) report.axioms[static_cast<std::size_t>(i)].axiom = i + 1;

  const std::size_t n = sample.size();
  auto& ax1 = report.axioms[0];
  auto& ax2 = report.axioms[1];
  auto& ax3 = report.axioms[2];
  auto& ax4 = report.axioms[3];

  auto diag_of = [&](const Point& x, const Point& y) { return m.eval_diag(x, y); };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Point& x = sample[i];
      const Point& y = sample[j];
      if (m.diagonal && m.eval_diag) {
        const std::vector<double> dxy = diag_of(x, y);
        if (ax1.pass) {
          for (double v : dxy) {
            if (v < -tol.eig_tol) {
              ax1.pass = false;
              ax1.witness = AxiomWitness{x, y, std::nullopt};
              break;
            }
          }
        }
        if (i == j && ax2.pass) {
          for (double v : dxy) {
            if (std::abs(v) > tol.eq_tol) {
              ax2.pass = false;
              ax2.witness = AxiomWitness{x, y, std::nullopt};
              break;
            }
          }
        }
        if (i < j) {
          if (ax3.pass) {
            const std::vector<double> dyx = diag_of(y, x);
            for (std::size_t s = 0; s < dxy.size(); ++s) {
              if (std::abs(dxy[s] - dyx[s]) > tol.eq_tol) {
                ax3.pass = false;
                ax3.witness = AxiomWitness{x, y, std::nullopt};
                break;
              }
            }
          }
          if (!(x == y)) {
            double mx = 0.0;
            for (double v : dxy) mx = std::max(mx, std::abs(v));
            if (mx <= tol.eq_tol)
              report.warnings.push_back(
                  "near-zero distance between distinct sample points " +
                  std::to_string(i) + " and " + std::to_string(j));
          }
        }
      } else {
        const Matrix dxy = m.eval(x, y);
        if (ax1.pass && !is_positive(dxy, tol)) {
          ax1.pass = false;
          ax1.witness = AxiomWitness{x, y, std::nullopt};
        }
        if (i == j && ax2.pass && max_abs(dxy) > tol.eq_tol) {
          ax2.pass = false;
          ax2.witness = AxiomWitness{x, y, std::nullopt};
        }
        if (i < j) {
          if (ax3.pass && max_abs(dxy - m.eval(y, x)) > tol.eq_tol) {
            ax3.pass = false;
            ax3.witness = AxiomWitness{x, y, std::nullopt};
          }
          if (!(x == y) && operator_norm(dxy, tol) <= tol.eq_tol)
            report.warnings.push_back(
                "near-zero distance between distinct sample points " +
                std::to_string(i) + " and " + std::to_string(j));
        }
      }
    }
  }

  for (std::size_t i = 0; i < n && ax4.pass; ++i) {
    for (std::size_t j = 0; j < n && ax4.pass; ++j) {
      for (std::size_t k = 0; k < n && ax4.pass; ++k) {
        const Point& x = sample[i];
        const Point& y = sample[j];
        const Point& z = sample[k];
        if (m.diagonal && m.eval_diag) {
          const std::vector<double> dxy = diag_of(x, y);
          const std::vector<double> dxz = diag_of(x, z);
          const std::vector<double> dzy = diag_of(z, y);
          for (std::size_t s = 0; s < dxy.size(); ++s) {
            if (dxy[s] > dxz[s] + dzy[s] + tol.eig_tol) {
              ax4.pass = false;
              ax4.witness = AxiomWitness{x, y, z};
              break;
            }
          }
        } else {
          if (!loewner_leq(m.eval(x, y), m.eval(x, z) + m.eval(z, y), tol)) {
            ax4.pass = false;
            ax4.witness = AxiomWitness{x, y, z};
          }
        }
      }
    }
  }

  return report;
}

bool is_cauchy(std::span<const Point> trace, const CStarMetric& m,
               const Tolerances& tol, int window) {
  tol.validate();
  const std::size_t len = trace.size();
  if (window < 1) throw TraceTooShort("is_cauchy: window must be >= 1");
  if (len <= static_cast<std::size_t>(window))
    throw TraceTooShort("is_cauchy: trace length " + std::to_string(len) +
                        " does not exceed window " + std::to_string(window));
  // Tail = final quarter, pulled back so at least one full window fits.
  std::size_t tail_start = (3 * len) / 4;
  tail_start = std::min(tail_start, len - static_cast<std::size_t>(window) - 1);
  for (std::size_t i = tail_start; i + 1 < len; ++i) {
    const std::size_t maxp = std::min<std::size_t>(static_cast<std::size_t>(window),
                                                   len - 1 - i);
    for (std::size_t p = 1; p <= maxp; ++p)
      if (m.norm(trace[i + p], trace[i]) > tol.conv_tol) return false;
  }
  return true;
}

bool converges_to(std::span<const Point> trace, const Point& limit,
                  const CStarMetric& m, const Tolerances& tol) {
  tol.validate();
  if (trace.empty()) throw TraceTooShort("converges_to: empty trace");
  const std::size_t tail_start = (3 * trace.size()) / 4;
  for (std::size_t i = tail_start; i < trace.size(); ++i)
    if (m.norm(trace[i], limit) > tol.conv_tol) return false;
  return true;
}

}  // namespace cstarfix
