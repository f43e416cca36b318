#include <chrono>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cstarfix/integral.hpp"
#include "cstarfix/json_io.hpp"
#include "cstarfix/mapping_families.hpp"
#include "demos.hpp"

namespace {

using namespace cstarfix;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitAssertion = 2;
constexpr int kExitConfig = 3;

struct GlobalOpts {
  std::uint64_t seed = 1729;
  double conv_tol = -1.0;  // negative: not set on the command line
  int max_iter = 0;        // zero: not set on the command line
  bool json_only = false;
};

void emit(const Json& out, const GlobalOpts& g, const std::string& summary) {
  std::cout << out.dump(2) << "\n";
  if (!g.json_only) std::cerr << summary << "\n";
}

double opt_number(const Json& cfg, const char* key, double fallback) {
  if (!cfg.is_object() || !cfg.contains(key)) return fallback;
  const Json& v = cfg.at(key);
  if (!v.is_number())
    throw ConfigError(std::string("config field \"") + key + "\": expected a number");
  return v.get<double>();
}

int opt_int(const Json& cfg, const char* key, int fallback) {
  if (!cfg.is_object() || !cfg.contains(key)) return fallback;
  const Json& v = cfg.at(key);
  if (!v.is_number_integer())
    throw ConfigError(std::string("config field \"") + key +
                      "\": expected an integer");
  return v.get<int>();
}

const Json& require_obj(const Json& cfg, const char* key) {
  if (!cfg.is_object() || !cfg.contains(key))
    throw ConfigError(std::string("config: missing field \"") + key + "\"");
  return cfg.at(key);
}

std::string require_str(const Json& cfg, const char* key) {
  const Json& v = require_obj(cfg, key);
  if (!v.is_string())
    throw ConfigError(std::string("config field \"") + key + "\": expected a string");
  return v.get<std::string>();
}

Tolerances tolerances_from(const Json& cfg, const GlobalOpts& g) {
  Tolerances t;
  t.conv_tol = opt_number(cfg, "conv_tol", t.conv_tol);
  t.eq_tol = opt_number(cfg, "eq_tol", t.eq_tol);
  t.eig_tol = opt_number(cfg, "eig_tol", t.eig_tol);
  if (g.conv_tol >= 0.0) t.conv_tol = g.conv_tol;
  t.validate();
  return t;
}

bool metric_is_grid(const Json& cfg) {
  return require_str(require_obj(cfg, "metric"), "kind") == "multiplication";
}

PairSample sample_from(const Json& cfg, bool grid, int grid_size,
                       std::uint64_t seed) {
  Json s = cfg.is_object() && cfg.contains("sample") ? cfg.at("sample")
                                                     : Json::object();
  const int count = opt_int(s, "count", 256);
  if (count < 1) throw ConfigError("sample.count: expected a positive integer");
  if (grid)
    return make_grid_pair_sample(static_cast<std::size_t>(count), grid_size,
                                 opt_number(s, "amplitude", 2.0), seed);
  return make_scalar_pair_sample(static_cast<std::size_t>(count),
                                 opt_number(s, "lo", -10.0),
                                 opt_number(s, "hi", 10.0), seed);
}

int run_demo_command(const std::string& id, const std::string& config_path,
                     const GlobalOpts& g) {
  demos::DemoOptions opts;
  opts.seed = g.seed;
  opts.overrides = Json::object();
  if (!config_path.empty()) {
    opts.overrides = load_json_file(config_path);
    if (!opts.overrides.is_object())
      throw ConfigError("demo overrides: expected a JSON object");
  }
  if (g.conv_tol >= 0.0) opts.overrides["conv_tol"] = g.conv_tol;
  opts.max_iter = opt_int(opts.overrides, "max_iter", opts.max_iter);
  if (g.max_iter > 0) opts.max_iter = g.max_iter;
  if (opts.overrides.contains("seed"))
    opts.seed = static_cast<std::uint64_t>(opt_int(opts.overrides, "seed", 0));

  const auto t0 = std::chrono::steady_clock::now();
  const demos::DemoResult res = demos::run_demo(id, opts);
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();

  Json assertions = Json::array();
  std::string summary = "demo " + id + ": ";
  std::string failures;
  for (const auto& a : res.assertions) {
    Json ja{{"name", a.name}, {"pass", a.pass}};
    if (!a.detail.empty()) ja["detail"] = a.detail;
    assertions.push_back(std::move(ja));
    if (!a.pass) failures += "\n  failed: " + a.name +
                             (a.detail.empty() ? "" : " (" + a.detail + ")");
  }
  const bool pass = res.pass();
  summary += pass ? "pass" : ("FAIL" + failures);

  Json out;
  out["command"] = "demo";
  out["id"] = id;
  out["pass"] = pass;
  out["elapsed_ms"] = elapsed_ms;
  out["assertions"] = std::move(assertions);
  out["report"] = res.report;
  emit(out, g, summary);
  return pass ? kExitPass : kExitAssertion;
}

MappingPair pair_from(const Json& cfg) {
  MappingPair pair;
  pair.t = mapping_from_config(require_obj(cfg, "t"));
  pair.s = mapping_from_config(require_obj(cfg, "s"));
  if (cfg.contains("s_section"))
    pair.s_section = mapping_from_config(cfg.at("s_section"));
  return pair;
}

std::string outcome_summary(const SolveOutcome& out) {
  std::string s = std::string("status: ") + solve_status_name(out.status) +
                  ", iterations: " + std::to_string(out.iterations);
  if (out.point && out.point->values.size() == 1)
    s += ", point: " + std::to_string(out.point->as_scalar());
  return s;
}

int run_solve_command(const std::string& config_path, const GlobalOpts& g) {
  const Json cfg = load_json_file(config_path);
  const std::string solver = require_str(cfg, "solver");
  const Tolerances tol = tolerances_from(cfg, g);
  int max_iter = opt_int(cfg, "max_iter", 10000);
  if (g.max_iter > 0) max_iter = g.max_iter;

  SolveOutcome out;
  Json report;
  if (solver == "alternating" || solver == "jungck") {
    const CStarMetric metric = metric_from_config(require_obj(cfg, "metric"));
    MappingPair pair = pair_from(cfg);
    const Point x0 = point_from_json(require_obj(cfg, "x0"));
    if (solver == "alternating") {
      if (cfg.contains("a")) {
        out = solve_alternating(pair, metric, matrix_from_json(cfg.at("a")), x0,
                                tol, max_iter);
      } else {
        out = solve_alternating(pair, metric, opt_number(cfg, "step_ratio", 0.5),
                                x0, tol, max_iter);
      }
    } else {
      const Json& cert_cfg = require_obj(cfg, "certificate");
      const std::string kind = require_str(cert_cfg, "kind");
      const Matrix a = matrix_from_json(require_obj(cert_cfg, "a"));
      const PairSample sample =
          sample_from(cfg, metric_is_grid(cfg), metric.algebra_dim, g.seed);
      ContractionCertificate cert;
      if (kind == "jungck_contraction")
        cert = check_jungck_contraction(pair, metric, a, sample, tol);
      else if (kind == "kannan_contraction")
        cert = check_kannan_contraction(pair, metric, a, sample, tol);
      else if (kind == "chatterjea_contraction")
        cert = check_chatterjea_contraction(pair, metric, a, sample, tol);
      else
        throw ConfigError("certificate.kind: \"" + kind +
                          "\" is not a coincidence-point condition");
      out = solve_jungck(pair, metric, cert, x0, tol, max_iter);
      out.certificate = cert;
    }
    report = to_json(out);
  } else if (solver == "integral") {
    const GridProblem problem = problem_from_config(require_obj(cfg, "problem"));
    std::vector<double> x0;
    const Json& start = require_obj(cfg, "x0");
    if (start.is_string() && start.get<std::string>() == "zero")
      x0.assign(problem.g.size(), 0.0);
    else if (start.is_string() && start.get<std::string>() == "g")
      x0 = problem.g;
    else
      x0 = point_from_json(start).samples();
    out = solve_common(problem, x0, tol, max_iter);
    report = solution_to_json(problem, out);
  } else {
    throw ConfigError("solver: unknown kind \"" + solver + "\"");
  }

  Json top;
  top["command"] = "solve";
  top["solver"] = solver;
  top["report"] = std::move(report);
  emit(top, g, "solve: " + outcome_summary(out));
  return out.status == SolveStatus::Converged ? kExitPass : kExitFail;
}

int run_check_command(const std::string& config_path, const GlobalOpts& g) {
  const Json cfg = load_json_file(config_path);
  const std::string kind = require_str(cfg, "check");
  const Tolerances tol = tolerances_from(cfg, g);

  Json top;
  top["command"] = "check";
  top["kind"] = kind;
  bool pass = false;

  if (kind == "metric_axioms") {
    const CStarMetric metric = metric_from_config(require_obj(cfg, "metric"));
    const Json s = cfg.contains("sample") ? cfg.at("sample") : Json::object();
    const int count = opt_int(s, "count", 10);
    std::vector<Point> points;
    if (metric_is_grid(cfg))
      points = demos::make_grid_points(static_cast<std::size_t>(count),
                                       metric.algebra_dim,
                                       opt_number(s, "amplitude", 2.0), g.seed);
    else
      points = demos::make_scalar_points(static_cast<std::size_t>(count),
                                         opt_number(s, "lo", -10.0),
                                         opt_number(s, "hi", 10.0), g.seed);
    const AxiomReport report = verify_axioms(metric, points, tol);
    pass = report.all_pass();
    top["report"] = to_json(report);
  } else if (kind == "integral_hypotheses") {
    const GridProblem problem = problem_from_config(require_obj(cfg, "problem"));
    const std::vector<double> u = default_u_sample(problem);
    const HypothesesReport report = verify_hypotheses(problem, u, tol);
    pass = report.all_pass();
    top["report"] = to_json(report);
  } else {
    const CStarMetric metric = metric_from_config(require_obj(cfg, "metric"));
    MappingPair pair = pair_from(cfg);
    const PairSample sample =
        sample_from(cfg, metric_is_grid(cfg), metric.algebra_dim, g.seed);
    ContractionCertificate cert;
    if (kind == "conjugate_contraction")
      cert = check_conjugate_contraction(
          pair, metric, matrix_from_json(require_obj(cfg, "a")), sample, tol);
    else if (kind == "jungck_contraction")
      cert = check_jungck_contraction(
          pair, metric, matrix_from_json(require_obj(cfg, "a")), sample, tol);
    else if (kind == "kannan_contraction")
      cert = check_kannan_contraction(
          pair, metric, matrix_from_json(require_obj(cfg, "a")), sample, tol);
    else if (kind == "chatterjea_contraction")
      cert = check_chatterjea_contraction(
          pair, metric, matrix_from_json(require_obj(cfg, "a")), sample, tol);
    else if (kind == "norm_contraction")
      cert = check_norm_contraction(pair, metric,
                                    opt_number(cfg, "bound", 0.5), sample, tol);
    else
      throw ConfigError("check: unknown kind \"" + kind + "\"");
    pass = cert.pass;
    top["report"] = to_json(cert);
  }

  top["pass"] = pass;
  emit(top, g, "check " + kind + ": " + (pass ? "pass" : "fail"));
  return pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvers and hypothesis checkers for matrix-valued metric spaces"};
  app.fallthrough(true);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "seed for sampled checks");
  double tol_flag = -1.0;
  app.add_option("--tol", tol_flag, "convergence tolerance override")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--max-iter", g.max_iter, "iteration cap override")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  app.add_flag("--json-only", g.json_only, "suppress the human summary on stderr");

  auto* demo_cmd = app.add_subcommand("demo", "run a named scenario");
  std::string demo_id;
  std::string demo_config;
  demo_cmd->add_option("id", demo_id, "scenario name")->required();
  demo_cmd->add_option("--config", demo_config, "JSON overrides file");

  auto* solve_cmd = app.add_subcommand("solve", "run a solver from a config");
  std::string solve_config;
  solve_cmd->add_option("--config", solve_config, "JSON config file")->required();

  auto* check_cmd = app.add_subcommand("check", "run a hypothesis check from a config");
  std::string check_config;
  check_cmd->add_option("--config", check_config, "JSON config file")->required();

  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  g.conv_tol = tol_flag;

  try {
    if (demo_cmd->parsed()) return run_demo_command(demo_id, demo_config, g);
    if (solve_cmd->parsed()) return run_solve_command(solve_config, g);
    return run_check_command(check_config, g);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    if (demo_cmd->parsed()) {
      std::cerr << "demo failed: " << e.what() << "\n";
      return kExitAssertion;
    }
    if (solve_cmd->parsed()) {
      std::cout << Json{{"command", "solve"}, {"error", e.what()}}.dump(2) << "\n";
      std::cerr << "solve error: " << e.what() << "\n";
      return kExitFail;
    }
    std::cerr << "check error: " << e.what() << "\n";
    return kExitConfig;
  }
}
