#include "cstarfix/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace cstarfix {

namespace {

void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw DimensionMismatch(std::string(op) + ": dimensions " +
                            std::to_string(a.dim()) + " and " +
                            std::to_string(b.dim()) + " differ");
}

void require_positive_dim(int dim) {
  if (dim < 1) throw DimensionMismatch("matrix dimension must be positive");
}

}  // namespace

Matrix::Matrix(int dim) : dim_(dim) {
  require_positive_dim(dim);
  e_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

Matrix::Matrix(int dim, std::vector<Complex> entries) : dim_(dim), e_(std::move(entries)) {
  require_positive_dim(dim);
  if (e_.size() != static_cast<std::size_t>(dim) * dim)
    throw DimensionMismatch("entry count does not match dim*dim");
}

Matrix::Matrix(int dim, std::initializer_list<double> real_entries) : dim_(dim) {
  require_positive_dim(dim);
  if (real_entries.size() != static_cast<std::size_t>(dim) * dim)
    throw DimensionMismatch("entry count does not match dim*dim");
  e_.reserve(real_entries.size());
  for (double v : real_entries) e_.emplace_back(v, 0.0);
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = Complex{1.0, 0.0};
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(static_cast<int>(values.size()));
  for (int i = 0; i < m.dim(); ++i) m.at(i, i) = Complex{values[static_cast<std::size_t>(i)], 0.0};
  return m;
}

Matrix Matrix::scalar_multiple(int dim, Complex value) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = value;
  return m;
}

Complex& Matrix::at(int i, int j) {
  return e_[static_cast<std::size_t>(i) * dim_ + j];
}

const Complex& Matrix::at(int i, int j) const {
  return e_[static_cast<std::size_t>(i) * dim_ + j];
}

bool Matrix::finite() const noexcept {
  for (const Complex& v : e_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

Matrix adjoint(const Matrix& a) {
  Matrix r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r.at(j, i) = std::conj(a.at(i, j));
  return r;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "add");
  Matrix r = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r.at(i, j) += b.at(i, j);
  return r;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "sub");
  Matrix r = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r.at(i, j) -= b.at(i, j);
  return r;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "mul");
  const int n = a.dim();
  Matrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a.at(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * b.at(k, j);
    }
  }
  return r;
}

Matrix scale(Complex lambda, const Matrix& a) {
  Matrix r = a;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r.at(i, j) *= lambda;
  return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }
Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }
Matrix operator*(Complex lambda, const Matrix& a) { return scale(lambda, a); }
Matrix operator*(double lambda, const Matrix& a) { return scale(Complex{lambda, 0.0}, a); }

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (const Complex& v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (const Complex& v : a.entries()) s += std::norm(v);
  return std::sqrt(s);
}

Complex trace(const Matrix& a) {
  Complex t{0.0, 0.0};
  for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
  return t;
}

double hermitian_deviation(const Matrix& a) {
  double dev = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j)
      dev = std::max(dev, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return dev;
}

bool is_hermitian(const Matrix& a, const Tolerances& tol) {
  tol.validate();
  return hermitian_deviation(a) <= tol.eq_tol;
}

double positivity_violation(const Matrix& a, const Tolerances& tol) {
  tol.validate();
  const double dev = hermitian_deviation(a);
  // Hermitize before the spectrum; the deviation itself is charged against
  // eq_tol so a genuinely non-Hermitian input cannot pass.
  Matrix h = 0.5 * (a + adjoint(a));
  Tolerances relaxed = tol;
  relaxed.eq_tol = std::numeric_limits<double>::infinity();
  const std::vector<double> spec = hermitian_spectrum(h, relaxed);
  const double lambda_min = spec.front();
  return std::max(-lambda_min - tol.eig_tol, dev - tol.eq_tol);
}

bool is_positive(const Matrix& a, const Tolerances& tol) {
  return positivity_violation(a, tol) <= 0.0;
}

bool loewner_leq(const Matrix& a, const Matrix& b, const Tolerances& tol) {
  require_same_dim(a, b, "loewner_leq");
  return is_positive(b - a, tol);
}

double operator_norm(const Matrix& a, const Tolerances& tol) {
  tol.validate();
  if (a.dim() == 1) return std::abs(a.at(0, 0));
  Tolerances relaxed = tol;
  relaxed.eq_tol = std::numeric_limits<double>::infinity();
  const std::vector<double> spec = hermitian_spectrum(adjoint(a) * a, relaxed);
  const double top = std::max(spec.back(), 0.0);
  return std::sqrt(top);
}

Matrix positive_sqrt(const Matrix& a, const Tolerances& tol) {
  tol.validate();
  const double dev = hermitian_deviation(a);
  if (dev > tol.eq_tol) throw NotPositive("positive_sqrt: input is not Hermitian");
  Matrix h = 0.5 * (a + adjoint(a));
  HermitianEigen eig = hermitian_eigen(h, tol);
  for (double& lambda : eig.values) {
    if (lambda < -tol.eig_tol)
      throw NotPositive("positive_sqrt: eigenvalue " + std::to_string(lambda) +
                        " below -eig_tol");
    if (lambda < 0.0) lambda = 0.0;  // clamp roundoff-negative eigenvalues
  }
  const int n = a.dim();
  Matrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Complex s{0.0, 0.0};
      for (int k = 0; k < n; ++k)
        s += eig.vectors.at(i, k) * std::sqrt(eig.values[static_cast<std::size_t>(k)]) *
             std::conj(eig.vectors.at(j, k));
      r.at(i, j) = s;
    }
  }
  // The spectral formula is Hermitian up to roundoff; symmetrise exactly.
  return 0.5 * (r + adjoint(r));
}

std::vector<Matrix> matrix_units(int dim) {
  require_positive_dim(dim);
  std::vector<Matrix> units;
  units.reserve(static_cast<std::size_t>(dim) * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      Matrix e(dim);
      e.at(i, j) = Complex{1.0, 0.0};
      units.push_back(std::move(e));
    }
  }
  return units;
}

bool commutes_with_all(const Matrix& a, std::span<const Matrix> probes,
                       const Tolerances& tol) {
  tol.validate();
  const double na = operator_norm(a, tol);
  for (const Matrix& b : probes) {
    require_same_dim(a, b, "commutes_with_all");
    const double nb = operator_norm(b, tol);
    const Matrix comm = a * b - b * a;
    if (operator_norm(comm, tol) > tol.eq_tol * (1.0 + na * nb)) return false;
  }
  return true;
}

bool in_commutant(const Matrix& a, const Tolerances& tol) {
  const std::vector<Matrix> units = matrix_units(a.dim());
  return commutes_with_all(a, units, tol);
}

Matrix neumann_inverse_one_minus(const Matrix& a, const Tolerances& tol, int max_terms) {
  tol.validate();
  const double r = operator_norm(a, tol);
  if (!(r < 1.0))
    throw NormNotLessThanOne("neumann_inverse_one_minus: ||a|| = " + std::to_string(r));
  // Smallest N with r^{N+1} / (1 - r) <= conv_tol.
  int terms = 0;  // N
  double tail = r / (1.0 - r);
  if (r > 0.0) {
    while (tail > tol.conv_tol) {
      ++terms;
      tail *= r;
      if (terms > max_terms)
        throw MaxTermsExceeded("neumann_inverse_one_minus: tail bound still " +
                               std::to_string(tail) + " after " +
                               std::to_string(max_terms) + " terms");
    }
  }
  Matrix sum = Matrix::identity(a.dim());
  Matrix power = Matrix::identity(a.dim());
  for (int k = 1; k <= terms; ++k) {
    power = power * a;
    sum = sum + power;
  }
  return sum;
}

}  // namespace cstarfix
