#include "demos.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <utility>

#include "cstarfix/integral.hpp"
#include "cstarfix/mapping_families.hpp"

namespace cstarfix::demos {

namespace {

void expect(DemoResult& r, const std::string& name, bool pass,
            const std::string& detail = {}) {
  r.assertions.push_back({name, pass, detail});
}

double knob(const DemoOptions& opts, const char* key, double fallback) {
  if (opts.overrides.is_object() && opts.overrides.contains(key)) {
    const Json& v = opts.overrides.at(key);
    if (!v.is_number())
      throw ConfigError(std::string("override \"") + key + "\": expected a number");
    return v.get<double>();
  }
  return fallback;
}

int knob_int(const DemoOptions& opts, const char* key, int fallback) {
  if (opts.overrides.is_object() && opts.overrides.contains(key)) {
    const Json& v = opts.overrides.at(key);
    if (!v.is_number_integer())
      throw ConfigError(std::string("override \"") + key + "\": expected an integer");
    return v.get<int>();
  }
  return fallback;
}

Tolerances demo_tol(const DemoOptions& opts, double default_conv) {
  Tolerances t = opts.tol;
  t.conv_tol = knob(opts, "conv_tol", default_conv);
  t.eq_tol = knob(opts, "eq_tol", t.eq_tol);
  t.eig_tol = knob(opts, "eig_tol", t.eig_tol);
  t.validate();
  return t;
}

Matrix root_half_identity() {
  return Matrix::scalar_multiple(2, std::sqrt(2.0) / 2.0);
}

// ---- scenario: order scaling by a non-commuting positive element ----------

DemoResult demo_remark11(const DemoOptions& opts) {
  const Tolerances tol = demo_tol(opts, 1e-9);
  DemoResult r;
  const Matrix a(2, {0, 3, 3, 1});
  const Matrix b(2, {1, 1, 1, 6});
  const Matrix c(2, {1, 1, 1, 1});
  const Matrix diff = c * b - c * a;
  const Matrix expected(2, {-1, 3, -1, 3});

  expect(r, "a_and_b_hermitian", is_hermitian(a, tol) && is_hermitian(b, tol));
  expect(r, "a_below_b", loewner_leq(a, b, tol));
  expect(r, "scaling_element_positive", is_positive(c, tol));
  expect(r, "scaling_element_not_in_commutant", !in_commutant(c, tol));
  expect(r, "scaled_difference_exact", diff == expected);
  expect(r, "scaled_difference_not_positive", !is_positive(diff, tol),
         "left-multiplying by a non-commuting positive element broke the order");

  r.report["a"] = to_json(a);
  r.report["b"] = to_json(b);
  r.report["c"] = to_json(c);
  r.report["difference"] = to_json(diff);
  r.report["verdict"] = "order not preserved";
  return r;
}

// ---- scenario: the reciprocal sequence and completeness of subsets --------

DemoResult demo_example11_completeness(const DemoOptions& opts) {
  const double k = knob(opts, "k", 2.0);
  const Tolerances tol = demo_tol(opts, 1e-3);
  DemoResult r;
  const CStarMetric metric = make_diag_metric(k);

  const std::vector<Point> sample = make_scalar_points(10, -5.0, 5.0, opts.seed);
  const AxiomReport axioms = verify_axioms(metric, sample, tol);

  std::vector<Point> trace;
  trace.reserve(4000);
  for (int n = 1; n <= 4000; ++n) trace.push_back(Point::scalar(1.0 / n));
  const bool cauchy = is_cauchy(trace, metric, tol);
  const bool to_zero = converges_to(trace, Point::scalar(0.0), metric, tol);

  SubsetSpec unit_interval{true, [](const Point& p) {
                             const double x = p.as_scalar();
                             return x >= 0.0 && x <= 1.0;
                           }};
  SubsetSpec punctured{false,
                       [](const Point& p) { return p.as_scalar() != 0.0; }};

  expect(r, "metric_axioms_hold", axioms.all_pass());
  expect(r, "reciprocal_sequence_cauchy", cauchy);
  expect(r, "reciprocal_sequence_converges_to_zero", to_zero);
  expect(r, "unit_interval_contains_limit",
         unit_interval.contains(Point::scalar(0.0)));
  expect(r, "punctured_line_misses_limit",
         !punctured.contains(Point::scalar(0.0)),
         "a Cauchy sequence in the punctured line escapes it, so the subset "
         "is not complete");

  r.report["k"] = k;
  r.report["conv_tol"] = tol.conv_tol;
  r.report["axioms"] = to_json(axioms);
  r.report["cauchy"] = cauchy;
  r.report["converges_to_zero"] = to_zero;
  r.report["subsets"] =
      Json{{"unit_interval_contains_limit", true},
           {"punctured_line_contains_limit", false}};
  return r;
}

// ---- scenario: weakly compatible but not compatible ------------------------

DemoResult demo_compat_counterexample(const DemoOptions& opts) {
  const double k = knob(opts, "k", 2.0);
  const Tolerances tol = demo_tol(opts, 1e-9);
  DemoResult r;
  const CStarMetric metric = make_diag_metric(k);
  MappingPair pair{make_reflect_plateau(), make_band_double(), std::nullopt};

  std::vector<Point> seq;
  std::vector<long> ns;
  for (long n = 2; n <= 524288; n *= 2) ns.push_back(n);
  ns.push_back(1000000);
  for (long n : ns) seq.push_back(Point::scalar(1.0 + 1.0 / static_cast<double>(n)));

  const CompatibilityReport compat = check_compatible(pair, metric, seq, tol);

  const Point tail = seq.back();
  const Point two = Point::scalar(2.0);
  const double commut = metric.norm(pair.t(pair.s(tail)), pair.s(pair.t(tail)));
  const double rt = metric.norm(pair.t(tail), two);
  const double rs = metric.norm(pair.s(tail), two);
  const double limit = std::max(1.0, k);

  const std::vector<Point> coincidence{Point::scalar(3.0)};
  const WeakCompatibilityReport weak =
      check_weakly_compatible(pair, metric, coincidence, tol);

  expect(r, "images_converge_to_common_limit", rt < 1e-5 && rs < 1e-5);
  expect(r, "commutator_tail_near_limit", std::abs(commut - limit) <= 1e-5,
         "commutator norm stabilises at max(1, k) instead of vanishing");
  expect(r, "verdict_incompatible",
         compat.verdict == CompatibilityReport::Verdict::Incompatible);
  expect(r, "weakly_compatible_at_coincidence_point", weak.all_commute);

  r.report["k"] = k;
  r.report["sequence_indices"] = ns;
  r.report["compat"] = to_json(compat);
  r.report["weak"] = to_json(weak);
  r.report["at_n"] = 1000000;
  r.report["commutator_norm"] = commut;
  r.report["t_image_residual"] = rt;
  r.report["s_image_residual"] = rs;
  return r;
}

// ---- scenario: alternating iteration under a conjugate bound ---------------

DemoResult demo_thm21(const DemoOptions& opts) {
  const double k = knob(opts, "k", 2.0);
  const Tolerances tol = demo_tol(opts, 1e-9);
  DemoResult r;
  const CStarMetric metric = make_diag_metric(k);
  MappingPair pair{make_affine(0.5, 1.0), make_affine(0.5, 1.0), std::nullopt};
  const Matrix a = root_half_identity();

  const PairSample sample = make_scalar_pair_sample(256, -100.0, 100.0, opts.seed);
  const ContractionCertificate cert =
      check_conjugate_contraction(pair, metric, a, sample, tol);
  expect(r, "certificate_passes", cert.pass);

  const std::vector<double> starts{-100.0, -37.5, 0.0, 42.25, 100.0};
  Json outcomes = Json::array();
  bool all_converged = true;
  bool limits_close = true;
  bool steps_geometric = true;
  double worst_limit_error = 0.0;
  for (double x0 : starts) {
    const SolveOutcome out = solve_alternating(pair, metric, a, Point::scalar(x0),
                                               tol, opts.max_iter);
    all_converged = all_converged && out.status == SolveStatus::Converged;
    if (out.point) {
      const double err = std::abs(out.point->as_scalar() - 2.0);
      worst_limit_error = std::max(worst_limit_error, err);
      limits_close = limits_close && err <= 1e-8;
    } else {
      limits_close = false;
    }
    const auto& steps = out.trace.step_norms;
    for (std::size_t n = 0; n < steps.size(); ++n) {
      const double bound = std::ldexp(steps[0], -static_cast<int>(n)) * (1.0 + 1e-9);
      if (steps[n] > bound) steps_geometric = false;
    }
    outcomes.push_back(to_json(out));
  }
  expect(r, "all_starts_converge", all_converged);
  expect(r, "limits_within_1e8_of_fixed_point", limits_close);
  expect(r, "step_norms_halve_each_iteration", steps_geometric);

  r.report["k"] = k;
  r.report["certificate"] = to_json(cert);
  r.report["starts"] = starts;
  r.report["outcomes"] = std::move(outcomes);
  r.report["worst_limit_error"] = worst_limit_error;
  return r;
}

// ---- scenario: coincidence iteration stalls when the image space leaks ----

DemoResult demo_example21_failure(const DemoOptions& opts) {
  const double k = knob(opts, "k", 1.0);
  const Tolerances tol = demo_tol(opts, 0.0);
  DemoResult r;
  const CStarMetric metric = make_diag_metric(k);
  // T halves away from the origin but jumps to 1 there; S scales by k away
  // from the origin and jumps to 2. They never meet: the residual shrinks
  // like |x| / 2 yet at the origin itself it snaps to the jump gap.
  MappingPair pair{make_scale_except_zero(k / 2.0, 1.0),
                   make_scale_except_zero(k, 2.0),
                   make_scale_except_zero_section(k)};
  const Matrix a = root_half_identity();

  const PairSample sample = make_scalar_pair_sample(256, -10.0, 10.0, opts.seed);
  const ContractionCertificate cert =
      check_jungck_contraction(pair, metric, a, sample, tol);
  expect(r, "certificate_passes", cert.pass);

  const SolveOutcome out =
      solve_jungck(pair, metric, cert, Point::scalar(1.0), tol, opts.max_iter);
  expect(r, "solver_does_not_converge", out.status != SolveStatus::Converged,
         std::string("status: ") + solve_status_name(out.status));
  expect(r, "bounded_iteration_count", out.iterations <= opts.max_iter);

  // Residual scan on the grid x_j = (j - 10000) / 1000 (zero hit exactly).
  double min_res = std::numeric_limits<double>::infinity();
  double argmin = 0.0;
  double res_at_zero = 0.0;
  double min_relative = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= 20000; ++j) {
    const double x = (j - 10000) * 1e-3;
    const Point px = Point::scalar(x);
    const double res = metric.norm(pair.t(px), pair.s(px));
    if (res < min_res) {
      min_res = res;
      argmin = x;
    }
    if (x == 0.0)
      res_at_zero = res;
    else
      min_relative = std::min(min_relative, res / std::abs(x));
  }

  r.report["k"] = k;
  r.report["certificate"] = to_json(cert);
  r.report["solve"] = to_json(out);
  r.report["scan"] = Json{{"lo", -10.0},
                          {"hi", 10.0},
                          {"step", 1e-3},
                          {"min", min_res},
                          {"argmin", argmin},
                          {"residual_at_zero", res_at_zero},
                          {"min_relative_away_from_zero", min_relative}};
  return r;
}

// ---- shared body for the two commutant-coefficient coincidence demos ------

DemoResult coincidence_demo(const DemoOptions& opts, double beta,
                            double fixed_point, bool chatterjea) {
  const double k = knob(opts, "k", 2.0);
  const Tolerances tol = demo_tol(opts, 1e-9);
  DemoResult r;
  const CStarMetric metric = make_diag_metric(k);
  MappingPair pair{make_affine(0.2, beta), make_identity(), make_identity()};
  const Matrix a = Matrix::scalar_multiple(2, 0.25);

  const PairSample sample = make_scalar_pair_sample(256, -10.0, 10.0, opts.seed);
  const ContractionCertificate cert =
      chatterjea ? check_chatterjea_contraction(pair, metric, a, sample, tol)
                 : check_kannan_contraction(pair, metric, a, sample, tol);
  expect(r, "certificate_passes", cert.pass);

  const Matrix inv = neumann_inverse_one_minus(a, tol);
  const double neumann_residual =
      operator_norm((Matrix::identity(2) - a) * inv - Matrix::identity(2), tol);
  const double ratio_norm = operator_norm(inv * a, tol);
  expect(r, "inverse_residual_within_1e9", neumann_residual <= 1e-9);
  expect(r, "inverse_ratio_close_to_third",
         std::abs(ratio_norm - 1.0 / 3.0) <= 1e-9);

  const double x0 = chatterjea ? -3.0 : 7.0;
  const SolveOutcome out =
      solve_jungck(pair, metric, cert, Point::scalar(x0), tol, opts.max_iter);
  const bool converged = out.status == SolveStatus::Converged;
  expect(r, "solver_converges", converged);
  const double q = out.point ? out.point->as_scalar()
                             : std::numeric_limits<double>::quiet_NaN();
  expect(r, "coincidence_point_close",
         converged && std::abs(q - fixed_point) <= 1e-8);
  expect(r, "common_fixed_point_reported",
         out.common_fixed_point.has_value() &&
             std::abs(out.common_fixed_point->as_scalar() - fixed_point) <= 1e-8);

  bool ratio_bounded = true;
  const auto& steps = out.trace.step_norms;
  for (std::size_t n = 1; n < steps.size(); ++n)
    if (steps[n] > ratio_norm * steps[n - 1] * (1.0 + 1e-9)) ratio_bounded = false;
  expect(r, "step_ratio_bounded_by_inverse_ratio", ratio_bounded);

  r.report["k"] = k;
  r.report["certificate"] = to_json(cert);
  r.report["neumann_residual"] = neumann_residual;
  r.report["inverse_ratio_norm"] = ratio_norm;
  r.report["solve"] = to_json(out);
  r.report["fixed_point"] = fixed_point;
  return r;
}

DemoResult demo_kannan(const DemoOptions& opts) {
  return coincidence_demo(opts, 0.0, 0.0, /*chatterjea=*/false);
}

DemoResult demo_chatterjea(const DemoOptions& opts) {
  return coincidence_demo(opts, 1.0, 1.25, /*chatterjea=*/true);
}

// ---- scenarios: coupled integral system -----------------------------------

KernelSpec kernel_for(KernelFamily family, double c,
                      std::function<double(double)> g) {
  KernelSpec spec;
  spec.family = family;
  spec.c = c;
  spec.phi = [](double, double) { return 1.0; };
  spec.g = std::move(g);
  spec.k_lip = 0.5;
  return spec;
}

DemoResult demo_integral_linear(const DemoOptions& opts) {
  const int n = knob_int(opts, "N", 201);
  const Tolerances tol = demo_tol(opts, 1e-9);
  DemoResult r;
  auto g = [](double t) { return t; };
  const GridProblem p = make_grid_problem(
      n, kernel_for(KernelFamily::Linear, 0.5, g),
      kernel_for(KernelFamily::Linear, 0.5, g));

  const std::vector<double> u = default_u_sample(p);
  const HypothesesReport hyp = verify_hypotheses(p, u, tol);
  expect(r, "hypotheses_pass", hyp.all_pass());
  expect(r, "factor_integral_sup_is_one",
         std::abs(hyp.kernel_bound.value - 1.0) <= 1e-12);

  const std::vector<double> x0(static_cast<std::size_t>(p.n), 0.0);
  const SolveOutcome out = solve_common(p, x0, tol, opts.max_iter);
  expect(r, "solver_converges", out.status == SolveStatus::Converged);
  expect(r, "at_most_sixty_iterations", out.iterations <= 60);
  expect(r, "certificate_passes",
         out.certificate.has_value() && out.certificate->pass);

  double err = std::numeric_limits<double>::infinity();
  if (out.point) {
    err = 0.0;
    const auto& sol = out.point->samples();
    for (std::size_t i = 0; i < sol.size(); ++i)
      err = std::max(err, std::abs(sol[i] - (p.nodes[i] + 0.5)));
  }
  expect(r, "max_node_error_within_1e6", err <= 1e-6,
         "closed-form solution is t + 1/2");

  r.report["hypotheses"] = to_json(hyp);
  r.report["solution"] = solution_to_json(p, out);
  r.report["max_node_error"] = err;
  return r;
}

DemoResult demo_integral_nonlinear(const DemoOptions& opts) {
  const int n = knob_int(opts, "N", 201);
  const Tolerances tol = demo_tol(opts, 1e-9);
  DemoResult r;
  auto g = [](double t) { return 0.5 * std::sin(t); };
  const GridProblem p = make_grid_problem(
      n, kernel_for(KernelFamily::BoundedNonlinear, 0.5, g),
      kernel_for(KernelFamily::BoundedNonlinear, 0.5, g));

  const std::vector<double> u = default_u_sample(p);
  const HypothesesReport hyp = verify_hypotheses(p, u, tol);
  expect(r, "hypotheses_pass", hyp.all_pass());

  std::vector<std::vector<double>> starts;
  starts.emplace_back(static_cast<std::size_t>(p.n), 0.0);
  starts.push_back(p.g);
  {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> random_start(static_cast<std::size_t>(p.n));
    for (double& v : random_start) v = dist(rng);
    starts.push_back(std::move(random_start));
  }

  std::vector<SolveOutcome> outs;
  bool all_converged = true;
  for (const auto& x0 : starts) {
    outs.push_back(solve_common(p, x0, tol, opts.max_iter));
    all_converged = all_converged && outs.back().status == SolveStatus::Converged;
  }
  expect(r, "all_starts_converge", all_converged);

  double agreement = 0.0;
  const CStarMetric metric = make_multiplication_metric(p.n);
  for (std::size_t i = 0; i + 1 < outs.size(); ++i)
    for (std::size_t j = i + 1; j < outs.size(); ++j)
      if (outs[i].point && outs[j].point)
        agreement = std::max(agreement, metric.norm(*outs[i].point, *outs[j].point));
  expect(r, "starts_agree_within_ten_conv_tol",
         all_converged && agreement <= 10.0 * tol.conv_tol);

  r.report["hypotheses"] = to_json(hyp);
  r.report["solution"] = solution_to_json(p, outs.front());
  r.report["start_count"] = starts.size();
  r.report["agreement"] = agreement;
  return r;
}

}  // namespace

const std::vector<std::string>& demo_ids() {
  static const std::vector<std::string> ids{
      "remark11",       "example11_completeness",
      "compat_counterexample", "thm21_demo",
      "example21_failure",     "kannan_demo",
      "chatterjea_demo",       "integral_linear",
      "integral_nonlinear"};
  return ids;
}

DemoResult run_demo(const std::string& id, const DemoOptions& opts) {
  if (id == "remark11") return demo_remark11(opts);
  if (id == "example11_completeness") return demo_example11_completeness(opts);
  if (id == "compat_counterexample") return demo_compat_counterexample(opts);
  if (id == "thm21_demo") return demo_thm21(opts);
  if (id == "example21_failure") return demo_example21_failure(opts);
  if (id == "kannan_demo") return demo_kannan(opts);
  if (id == "chatterjea_demo") return demo_chatterjea(opts);
  if (id == "integral_linear") return demo_integral_linear(opts);
  if (id == "integral_nonlinear") return demo_integral_nonlinear(opts);
  std::string known;
  for (const auto& s : demo_ids()) known += " " + s;
  throw ConfigError("unknown demo id \"" + id + "\"; expected one of:" + known);
}

std::vector<Point> make_scalar_points(std::size_t count, double lo, double hi,
                                      std::uint64_t seed) {
  std::vector<Point> points;
  points.reserve(count);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  while (points.size() < count) points.push_back(Point::scalar(dist(rng)));
  return points;
}

std::vector<Point> make_grid_points(std::size_t count, int grid_size,
                                    double amplitude, std::uint64_t seed) {
  const PairSample pairs =
      make_grid_pair_sample((count + 1) / 2, grid_size, amplitude, seed);
  std::vector<Point> points;
  points.reserve(count);
  for (const auto& [x, y] : pairs) {
    if (points.size() < count) points.push_back(x);
    if (points.size() < count) points.push_back(y);
  }
  return points;
}

}  // namespace cstarfix::demos
