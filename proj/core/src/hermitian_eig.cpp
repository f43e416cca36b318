#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "cstarfix/matrix.hpp"

namespace cstarfix {

namespace {

double off_diagonal_frobenius(const std::vector<Complex>& h, int n) {
  double s = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) s += std::norm(h[static_cast<std::size_t>(p) * n + q]);
  return std::sqrt(2.0 * s);
}

}  // namespace

// Cyclic Jacobi for complex Hermitian matrices. Each rotation first strips
// the phase of h_pq, then applies the classical symmetric 2x2 rotation; both
// are folded into one unitary acting on rows/columns p and q.
HermitianEigen hermitian_eigen(const Matrix& a, const Tolerances& tol) {
  tol.validate();
  const int n = a.dim();
  if (n < 1) throw DimensionMismatch("hermitian_eigen: empty matrix");
  const double dev = hermitian_deviation(a);
  if (dev > tol.eq_tol)
    throw NotHermitian("hermitian_eigen: deviation from self-adjoint is " +
                       std::to_string(dev));

  const std::size_t nn = static_cast<std::size_t>(n) * n;
  std::vector<Complex> h(nn);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Hermitize; the diagonal becomes exactly real.
      h[static_cast<std::size_t>(i) * n + j] =
          0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
    }
    h[static_cast<std::size_t>(i) * n + i] = Complex{a.at(i, i).real(), 0.0};
  }
  std::vector<Complex> v(nn, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = Complex{1.0, 0.0};

  const double scale = [&] {
    double s = 0.0;
    for (const Complex& z : h) s += std::norm(z);
    return std::sqrt(s);
  }();

  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  if (scale > 0.0 && n > 1) {
    const double stop = scale * 1e-14;
    const int max_sweeps = 64;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
      if (off_diagonal_frobenius(h, n) <= stop) {
        converged = true;
        break;
      }
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          const Complex gamma = h[idx(p, q)];
          const double ag = std::abs(gamma);
          if (ag == 0.0) continue;
          const double app = h[idx(p, p)].real();
          const double aqq = h[idx(q, q)].real();
          // Negligible against the diagonal: zero it and move on.
          if (std::abs(app) + ag == std::abs(app) &&
              std::abs(aqq) + ag == std::abs(aqq)) {
            h[idx(p, q)] = Complex{0.0, 0.0};
            h[idx(q, p)] = Complex{0.0, 0.0};
            continue;
          }
          const Complex phase = gamma / ag;  // e^{i phi}
          const double tau = (aqq - app) / (2.0 * ag);
          const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                        : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const Complex se_m = s * std::conj(phase);  // s e^{-i phi}
          const Complex se_p = s * phase;             // s e^{+i phi}

          // Columns p, q of h (right-multiply by the rotation).
          for (int i = 0; i < n; ++i) {
            const Complex hip = h[idx(i, p)];
            const Complex hiq = h[idx(i, q)];
            h[idx(i, p)] = c * hip - se_m * hiq;
            h[idx(i, q)] = s * hip + c * std::conj(phase) * hiq;
          }
          // Rows p, q of h (left-multiply by the adjoint rotation).
          for (int j = 0; j < n; ++j) {
            const Complex hpj = h[idx(p, j)];
            const Complex hqj = h[idx(q, j)];
            h[idx(p, j)] = c * hpj - se_p * hqj;
            h[idx(q, j)] = s * hpj + c * phase * hqj;
          }
          // Exact values on the rotated 2x2 block.
          h[idx(p, p)] = Complex{app - t * ag, 0.0};
          h[idx(q, q)] = Complex{aqq + t * ag, 0.0};
          h[idx(p, q)] = Complex{0.0, 0.0};
          h[idx(q, p)] = Complex{0.0, 0.0};

          // Accumulate eigenvectors (columns of v).
          for (int i = 0; i < n; ++i) {
            const Complex vip = v[idx(i, p)];
            const Complex viq = v[idx(i, q)];
            v[idx(i, p)] = c * vip - se_m * viq;
            v[idx(i, q)] = s * vip + c * std::conj(phase) * viq;
          }
        }
      }
    }
    if (!converged && off_diagonal_frobenius(h, n) > stop)
      throw NoConvergence("hermitian_eigen: Jacobi sweeps exhausted");
  }

  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = h[idx(i, i)].real();

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](int i, int j) { return values[static_cast<std::size_t>(i)] <
                                        values[static_cast<std::size_t>(j)]; });

  HermitianEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors = Matrix(n);
  for (int j = 0; j < n; ++j) {
    const int src = perm[static_cast<std::size_t>(j)];
    out.values[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(src)];
    for (int i = 0; i < n; ++i) out.vectors.at(i, j) = v[idx(i, src)];
  }
  return out;
}

std::vector<double> hermitian_spectrum(const Matrix& a, const Tolerances& tol) {
  return hermitian_eigen(a, tol).values;
}

}  // namespace cstarfix
