#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "cstarfix/errors.hpp"
#include "cstarfix/tolerances.hpp"

namespace cstarfix {

using Complex = std::complex<double>;

/// Element of the algebra of n-by-n complex matrices, row-major storage.
///
/// The class is a plain value type; all algebraic operations live in free
/// functions below so the partial order, norm and spectral calculus read the
/// same way they are written on paper.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim);
  Matrix(int dim, std::vector<Complex> entries);
  /// Convenience for real test data: entries listed row by row.
  Matrix(int dim, std::initializer_list<double> real_entries);

  static Matrix identity(int dim);
  static Matrix diagonal(std::span<const double> values);
  /// value * identity.
  static Matrix scalar_multiple(int dim, Complex value);

  int dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& at(int i, int j);
  const Complex& at(int i, int j) const;

  std::span<const Complex> entries() const noexcept { return e_; }
  bool finite() const noexcept;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int dim_ = 0;
  std::vector<Complex> e_;
};

Matrix adjoint(const Matrix& a);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix mul(const Matrix& a, const Matrix& b);
Matrix scale(Complex lambda, const Matrix& a);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex lambda, const Matrix& a);
Matrix operator*(double lambda, const Matrix& a);

/// Largest entry magnitude.
double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
Complex trace(const Matrix& a);

/// Entrywise deviation from self-adjointness, max |a_ij - conj(a_ji)|.
double hermitian_deviation(const Matrix& a);
bool is_hermitian(const Matrix& a, const Tolerances& tol = {});

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // unitary; column j pairs with values[j]
};

/// Full spectral decomposition of a Hermitian matrix by cyclic Jacobi
/// rotations. Throws NotHermitian when the input deviates from self-adjoint
/// by more than eq_tol, NoConvergence if the sweep budget is exhausted.
HermitianEigen hermitian_eigen(const Matrix& a, const Tolerances& tol = {});

/// Eigenvalues only, ascending.
std::vector<double> hermitian_spectrum(const Matrix& a, const Tolerances& tol = {});

/// How far a is from being positive semidefinite:
///   max(-lambda_min(herm(a)) - eig_tol, hermitian_deviation(a) - eq_tol).
/// Non-positive result means the matrix passes is_positive.
double positivity_violation(const Matrix& a, const Tolerances& tol = {});

/// Hermitian within eq_tol and spectrum >= -eig_tol. Never throws on a
/// non-Hermitian argument; that is simply "not positive".
bool is_positive(const Matrix& a, const Tolerances& tol = {});

/// Loewner order: a <= b iff b - a is positive.
bool loewner_leq(const Matrix& a, const Matrix& b, const Tolerances& tol = {});

/// Operator norm, sqrt(lambda_max(a* a)).
double operator_norm(const Matrix& a, const Tolerances& tol = {});

/// Unique positive square root via the spectral decomposition. Eigenvalues
/// in [-eig_tol, 0) are clamped to zero; anything lower throws NotPositive.
Matrix positive_sqrt(const Matrix& a, const Tolerances& tol = {});

/// The n^2 matrix units E_ij. Commuting with all of them characterises the
/// scalar multiples of the identity.
std::vector<Matrix> matrix_units(int dim);

/// True when ||a b - b a|| <= eq_tol * (1 + ||a|| ||b||) for every probe b.
bool commutes_with_all(const Matrix& a, std::span<const Matrix> probes,
                       const Tolerances& tol = {});

/// commutes_with_all against the matrix units.
bool in_commutant(const Matrix& a, const Tolerances& tol = {});

/// Partial sum S_N of the geometric series for (1 - a)^{-1}, with N chosen
/// so the tail bound ||a||^{N+1} / (1 - ||a||) drops below conv_tol.
/// Requires ||a|| < 1 (NormNotLessThanOne); throws MaxTermsExceeded when no
/// admissible N exists within max_terms.
Matrix neumann_inverse_one_minus(const Matrix& a, const Tolerances& tol = {},
                                 int max_terms = 4096);

}  // namespace cstarfix
