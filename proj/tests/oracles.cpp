#include "oracles.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace oracle {

std::pair<double, double> herm2_eigenvalues(double a00, double a11,
                                            std::complex<double> a01) {
  const double tr = a00 + a11;
  const double gap = a00 - a11;
  const double disc = std::sqrt(gap * gap + 4.0 * std::norm(a01));
  return {0.5 * (tr - disc), 0.5 * (tr + disc)};
}

namespace {

template <typename T>
std::vector<T> lu_solve(std::vector<T> a, std::vector<T> b, int n) {
  if (static_cast<int>(b.size()) != n ||
      static_cast<int>(a.size()) != n * n) {
    throw std::invalid_argument("lu_solve: shape mismatch");
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[col * n + col]);
    for (int row = col + 1; row < n; ++row) {
      const double mag = std::abs(a[row * n + col]);
      if (mag > best) {
        best = mag;
        pivot = row;
      }
    }
    if (best == 0.0) throw std::runtime_error("lu_solve: singular matrix");
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      std::swap(b[pivot], b[col]);
    }
    for (int row = col + 1; row < n; ++row) {
      const T factor = a[row * n + col] / a[col * n + col];
      a[row * n + col] = T(0);
      for (int j = col + 1; j < n; ++j) a[row * n + j] -= factor * a[col * n + j];
      b[row] -= factor * b[col];
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    T acc = b[row];
    for (int j = row + 1; j < n; ++j) acc -= a[row * n + j] * b[j];
    b[row] = acc / a[row * n + row];
  }
  return b;
}

}  // namespace

std::vector<std::complex<double>> solve_dense(std::vector<std::complex<double>> a,
                                              std::vector<std::complex<double>> b,
                                              int n) {
  return lu_solve(std::move(a), std::move(b), n);
}

std::vector<double> solve_dense_real(std::vector<double> a, std::vector<double> b,
                                     int n) {
  return lu_solve(std::move(a), std::move(b), n);
}

cstarfix::Matrix invert(const cstarfix::Matrix& m) {
  const int n = m.dim();
  std::vector<std::complex<double>> flat(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) flat[i * n + j] = m.at(i, j);
  cstarfix::Matrix out(n);
  for (int col = 0; col < n; ++col) {
    std::vector<std::complex<double>> e(n, 0.0);
    e[col] = 1.0;
    const auto x = solve_dense(flat, std::move(e), n);
    for (int row = 0; row < n; ++row) out.at(row, col) = x[row];
  }
  return out;
}

}  // namespace oracle
