#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cstarfix/fixpoint.hpp"
#include "cstarfix/tolerances.hpp"

namespace cstarfix {

enum class KernelFamily { Linear, BoundedNonlinear, Custom };

const char* kernel_family_name(KernelFamily family);

/// One integral kernel K(t, s, u) together with the shared problem data:
/// the factor phi(t, s), the inhomogeneity g(t) and the Lipschitz constant
/// k_lip in (0, 1) claimed for |K1(t,s,u) - K2(t,s,v)| <= k_lip phi |u - v|.
struct KernelSpec {
  KernelFamily family = KernelFamily::Linear;
  double c = 0.0;
  std::function<double(double, double)> phi;  // non-negative
  std::function<double(double)> g;
  double k_lip = 0.5;
  std::function<double(double, double, double)> custom;  // Custom family only

  /// Linear: c * phi * u.  BoundedNonlinear: c * phi * u / (1 + u^2).
  double eval(double t, double s, double u) const;
};

/// Discretisation of the coupled integral system on [0, 1]: uniform nodes,
/// trapezoid weights, sampled inhomogeneity. The weights sum to one within
/// 1e-12 by construction.
struct GridProblem {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  KernelSpec k1;
  KernelSpec k2;
  std::vector<double> g;
};

/// Builds the grid problem and validates the kernel specs (k_lip range,
/// phi finite and non-negative on the grid, g finite).
GridProblem make_grid_problem(int grid_size, KernelSpec k1, KernelSpec k2);

struct HypothesisResult {
  bool pass = true;
  double value = 0.0;
  std::string witness;
};

struct HypothesesReport {
  HypothesisResult integrability;  // kernels and g finite on sampled args
  HypothesisResult lipschitz;      // |K1(u) - K2(v)| <= k_lip phi |u - v|
  HypothesisResult kernel_bound;   // sup_t integral of phi <= 1
  /// The Lipschitz hypothesis at u == v forces K1 == K2 pointwise; when it
  /// verifies, this flag records that consequence.
  bool kernels_coincide_on_sample = false;
  std::string note;

  bool all_pass() const {
    return integrability.pass && lipschitz.pass && kernel_bound.pass;
  }
};

/// Checks the solvability hypotheses over the grid nodes and the supplied
/// u-sample (for the Lipschitz lattice).
HypothesesReport verify_hypotheses(const GridProblem& p,
                                   std::span<const double> sample_u,
                                   const Tolerances& tol = {});

/// Default u-lattice: symmetric around zero with radius
/// 2 (||g||_inf + 1) / (1 - k_lip), the invariant ball of the iteration.
std::vector<double> default_u_sample(const GridProblem& p);

/// y_i = sum_j w_j K(t_i, s_j, x_j) + g_i for kernel `which` in {1, 2}.
/// The quadrature sum uses pairwise summation, so results are bitwise
/// deterministic for a fixed grid. Throws NonFiniteInput / DimensionMismatch.
std::vector<double> apply_operator(const GridProblem& p, int which,
                                   std::span<const double> x);

/// Common solution of the coupled system by the alternating iteration under
/// the multiplication-operator metric, with the norm-contraction certificate
/// (bound k_lip) sampled on random grid pairs and attached to the outcome.
SolveOutcome solve_common(const GridProblem& p, const std::vector<double>& x0,
                          const Tolerances& tol = {}, int max_iter = 10000);

}  // namespace cstarfix
