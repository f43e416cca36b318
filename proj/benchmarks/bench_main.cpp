#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "cstarfix/fixpoint.hpp"
#include "cstarfix/integral.hpp"
#include "cstarfix/mapping_families.hpp"
#include "cstarfix/matrix.hpp"
#include "cstarfix/metric.hpp"

using namespace cstarfix;

namespace {

Matrix random_hermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m.at(i, j) = Complex(u(rng), u(rng));
  return 0.5 * (m + adjoint(m));
}

KernelSpec linear_spec() {
  KernelSpec k;
  k.family = KernelFamily::Linear;
  k.c = 0.5;
  k.g = [](double t) { return t; };
  k.k_lip = 0.5;
  return k;
}

void BM_HermitianEigen(benchmark::State& state) {
  const Matrix m = random_hermitian(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(m));
}
BENCHMARK(BM_HermitianEigen)->RangeMultiplier(2)->Range(2, 64);

void BM_OperatorNorm(benchmark::State& state) {
  const Matrix m = random_hermitian(static_cast<int>(state.range(0)), 43);
  for (auto _ : state) benchmark::DoNotOptimize(operator_norm(m));
}
BENCHMARK(BM_OperatorNorm)->Arg(2)->Arg(8)->Arg(32);

void BM_PositiveSqrt(benchmark::State& state) {
  const Matrix h = random_hermitian(8, 44);
  const Matrix psd = adjoint(h) * h;
  for (auto _ : state) benchmark::DoNotOptimize(positive_sqrt(psd));
}
BENCHMARK(BM_PositiveSqrt);

void BM_NeumannInverse(benchmark::State& state) {
  Matrix m = random_hermitian(4, 45);
  m = (0.5 / operator_norm(m)) * m;
  for (auto _ : state) benchmark::DoNotOptimize(neumann_inverse_one_minus(m));
}
BENCHMARK(BM_NeumannInverse);

void BM_ContractionCheck(benchmark::State& state) {
  MappingPair pair;
  pair.t = make_affine(0.5, 1.0);
  pair.s = pair.t;
  const CStarMetric metric = make_diag_metric(2.0);
  const Matrix a = Matrix::scalar_multiple(2, std::sqrt(2.0) / 2.0);
  const PairSample sample =
      make_scalar_pair_sample(static_cast<std::size_t>(state.range(0)), -100.0,
                              100.0, 1729);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        check_conjugate_contraction(pair, metric, a, sample));
}
BENCHMARK(BM_ContractionCheck)->Arg(256)->Arg(1024);

void BM_AlternatingSolve(benchmark::State& state) {
  MappingPair pair;
  pair.t = make_affine(0.5, 1.0);
  pair.s = pair.t;
  const CStarMetric metric = make_diag_metric(2.0);
  const Matrix a = Matrix::scalar_multiple(2, std::sqrt(2.0) / 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        solve_alternating(pair, metric, a, Point::scalar(-100.0)));
}
BENCHMARK(BM_AlternatingSolve);

void BM_ApplyOperator(benchmark::State& state) {
  const GridProblem p = make_grid_problem(static_cast<int>(state.range(0)),
                                          linear_spec(), linear_spec());
  const std::vector<double> x(p.nodes);
  for (auto _ : state) benchmark::DoNotOptimize(apply_operator(p, 1, x));
}
BENCHMARK(BM_ApplyOperator)->Arg(101)->Arg(201)->Arg(401);

void BM_VerifyHypotheses(benchmark::State& state) {
  const GridProblem p = make_grid_problem(static_cast<int>(state.range(0)),
                                          linear_spec(), linear_spec());
  const std::vector<double> u = default_u_sample(p);
  for (auto _ : state) benchmark::DoNotOptimize(verify_hypotheses(p, u));
}
BENCHMARK(BM_VerifyHypotheses)->Arg(101)->Arg(201);

void BM_IntegralSolve(benchmark::State& state) {
  const GridProblem p = make_grid_problem(static_cast<int>(state.range(0)),
                                          linear_spec(), linear_spec());
  const std::vector<double> x0(p.g.size(), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_common(p, x0));
}
BENCHMARK(BM_IntegralSolve)->Arg(101)->Arg(201);

}  // namespace

BENCHMARK_MAIN();
