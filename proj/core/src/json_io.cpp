#include "cstarfix/json_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "cstarfix/mapping_families.hpp"

namespace cstarfix {

namespace {

const Json& require_field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object())
    throw ConfigError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(path + ": missing field \"" + key + "\"");
  return *it;
}

double require_number(const Json& j, const char* key, const std::string& path) {
  const Json& v = require_field(j, key, path);
  if (!v.is_number())
    throw ConfigError(path + "." + key + ": expected a number");
  return v.get<double>();
}

int require_int(const Json& j, const char* key, const std::string& path) {
  const Json& v = require_field(j, key, path);
  if (!v.is_number_integer())
    throw ConfigError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string require_string(const Json& j, const char* key, const std::string& path) {
  const Json& v = require_field(j, key, path);
  if (!v.is_string())
    throw ConfigError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<std::vector<double>> part_rows(const Matrix& a, bool imaginary) {
  const int n = a.dim();
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      row[static_cast<std::size_t>(j)] =
          imaginary ? a.at(i, j).imag() : a.at(i, j).real();
  }
  return rows;
}

void read_part(const Json& j, const char* key, int dim, bool imaginary,
               Matrix& out) {
  auto it = j.find(key);
  if (it == j.end()) {
    if (imaginary) return;  // "im" may be omitted for real matrices
    throw ConfigError(std::string("matrix: missing field \"") + key + "\"");
  }
  const Json& rows = *it;
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dim))
    throw ConfigError(std::string("matrix.") + key + ": expected " +
                      std::to_string(dim) + " rows");
  for (int i = 0; i < dim; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
      throw ConfigError(std::string("matrix.") + key + "[" + std::to_string(i) +
                        "]: expected " + std::to_string(dim) + " numbers");
    for (int k = 0; k < dim; ++k) {
      const Json& cell = row[static_cast<std::size_t>(k)];
      if (!cell.is_number())
        throw ConfigError(std::string("matrix.") + key + "[" + std::to_string(i) +
                          "][" + std::to_string(k) + "]: expected a number");
      const double v = cell.get<double>();
      Complex& e = out.at(i, k);
      e = imaginary ? Complex(e.real(), v) : Complex(v, e.imag());
    }
  }
}

Json hypothesis_to_json(const HypothesisResult& r) {
  Json j;
  j["pass"] = r.pass;
  j["value"] = r.value;
  if (!r.witness.empty()) j["witness"] = r.witness;
  return j;
}

}  // namespace

Json to_json(const Matrix& a) {
  Json j;
  j["dim"] = a.dim();
  j["re"] = part_rows(a, false);
  j["im"] = part_rows(a, true);
  return j;
}

Matrix matrix_from_json(const Json& j) {
  const int dim = require_int(j, "dim", "matrix");
  if (dim < 1) throw ConfigError("matrix.dim: expected a positive integer");
  Matrix a(dim);
  read_part(j, "re", dim, false, a);
  read_part(j, "im", dim, true, a);
  return a;
}

Json to_json(const Point& p) {
  Json j;
  switch (p.kind) {
    case PointKind::RealScalar: j["kind"] = "scalar"; break;
    case PointKind::RealVector: j["kind"] = "vector"; break;
    case PointKind::GridFunction: j["kind"] = "grid"; break;
  }
  j["values"] = p.values;
  return j;
}

Point point_from_json(const Json& j) {
  if (j.is_number()) return Point::scalar(j.get<double>());
  if (j.is_array()) {
    std::vector<double> v;
    v.reserve(j.size());
    for (const Json& cell : j) {
      if (!cell.is_number())
        throw ConfigError("point: expected an array of numbers");
      v.push_back(cell.get<double>());
    }
    return Point::grid(std::move(v));
  }
  const std::string kind = require_string(j, "kind", "point");
  const Json& values = require_field(j, "values", "point");
  if (!values.is_array())
    throw ConfigError("point.values: expected an array of numbers");
  std::vector<double> v;
  v.reserve(values.size());
  for (const Json& cell : values) {
    if (!cell.is_number())
      throw ConfigError("point.values: expected an array of numbers");
    v.push_back(cell.get<double>());
  }
  if (kind == "scalar") {
    if (v.size() != 1)
      throw ConfigError("point.values: scalar points carry exactly one value");
    return Point::scalar(v[0]);
  }
  if (kind == "vector") return Point::vector(std::move(v));
  if (kind == "grid") return Point::grid(std::move(v));
  throw ConfigError("point.kind: unknown kind \"" + kind + "\"");
}

Json to_json(const AxiomReport& report) {
  Json axioms = Json::array();
  for (const AxiomResult& r : report.axioms) {
    Json a;
    a["axiom"] = r.axiom;
    a["pass"] = r.pass;
    if (r.witness) {
      Json w;
      w["x"] = to_json(r.witness->x);
      w["y"] = to_json(r.witness->y);
      if (r.witness->z) w["z"] = to_json(*r.witness->z);
      a["witness"] = std::move(w);
    }
    axioms.push_back(std::move(a));
  }
  Json j;
  j["axioms"] = std::move(axioms);
  j["warnings"] = report.warnings;
  j["all_pass"] = report.all_pass();
  return j;
}

Json to_json(const ContractionCertificate& cert) {
  Json j;
  j["kind"] = cert_kind_name(cert.kind);
  j["pass"] = cert.pass;
  j["checked_pairs"] = cert.checked_pairs;
  j["max_violation"] = cert.max_violation;
  if (cert.kind == CertKind::NormContraction) {
    j["norm_bound"] = cert.norm_bound;
  } else if (cert.a.dim() > 0) {
    j["a"] = to_json(cert.a);
  }
  if (cert.witness) {
    j["witness"] = Json{{"x", to_json(cert.witness->first)},
                        {"y", to_json(cert.witness->second)}};
  }
  return j;
}

Json to_json(const SolveOutcome& outcome) {
  Json j;
  j["status"] = solve_status_name(outcome.status);
  j["iterations"] = outcome.iterations;
  if (outcome.point) j["point"] = to_json(*outcome.point);
  if (outcome.residual_t) j["residual_t"] = *outcome.residual_t;
  if (outcome.residual_s) j["residual_s"] = *outcome.residual_s;
  if (outcome.coincidence_residual)
    j["coincidence_residual"] = *outcome.coincidence_residual;
  if (outcome.base_map_residual)
    j["base_map_residual"] = *outcome.base_map_residual;
  if (outcome.common_fixed_point)
    j["common_fixed_point"] = to_json(*outcome.common_fixed_point);
  if (outcome.certificate) j["certificate"] = to_json(*outcome.certificate);
  j["step_norms"] = outcome.trace.step_norms;
  j["bound_norms"] = outcome.trace.bound_norms;
  if (!outcome.notes.empty()) j["notes"] = outcome.notes;
  return j;
}

Json to_json(const CompatibilityReport& report) {
  Json j;
  j["verdict"] = compat_verdict_name(report.verdict);
  j["commutator_norms"] = report.commutator_norms;
  j["tail_norm"] = report.tail_norm;
  j["detail"] = report.detail;
  return j;
}

Json to_json(const WeakCompatibilityReport& report) {
  Json entries = Json::array();
  for (const WeakCompatibilityEntry& e : report.entries) {
    entries.push_back(Json{{"point", to_json(e.point)},
                           {"coincidence_residual", e.coincidence_residual},
                           {"commutator_norm", e.commutator_norm},
                           {"commutes", e.commutes}});
  }
  Json j;
  j["entries"] = std::move(entries);
  j["all_commute"] = report.all_commute;
  return j;
}

Json to_json(const HypothesesReport& report) {
  Json j;
  j["integrability"] = hypothesis_to_json(report.integrability);
  j["lipschitz"] = hypothesis_to_json(report.lipschitz);
  j["kernel_bound"] = hypothesis_to_json(report.kernel_bound);
  j["kernels_coincide_on_sample"] = report.kernels_coincide_on_sample;
  if (!report.note.empty()) j["note"] = report.note;
  j["all_pass"] = report.all_pass();
  return j;
}

Json solution_to_json(const GridProblem& p, const SolveOutcome& outcome) {
  Json j = to_json(outcome);
  j["grid_size"] = p.n;
  j["nodes"] = p.nodes;
  if (outcome.point) j["solution"] = outcome.point->samples();
  return j;
}

CStarMetric metric_from_config(const Json& j) {
  const std::string kind = require_string(j, "kind", "metric");
  if (kind == "diag") {
    const double k = require_number(j, "k", "metric");
    if (!(k > 0.0)) throw ConfigError("metric.k: expected k > 0");
    return make_diag_metric(k);
  }
  if (kind == "multiplication") {
    const int n = require_int(j, "n", "metric");
    if (n < 2) throw ConfigError("metric.n: expected n >= 2");
    return make_multiplication_metric(n);
  }
  throw ConfigError("metric.kind: unknown kind \"" + kind + "\"");
}

Mapping mapping_from_config(const Json& j) {
  const std::string family = require_string(j, "family", "mapping");
  if (family == "identity") return make_identity();
  if (family == "affine")
    return make_affine(require_number(j, "alpha", "mapping"),
                       require_number(j, "beta", "mapping"));
  if (family == "scale_except_zero")
    return make_scale_except_zero(require_number(j, "factor", "mapping"),
                                  require_number(j, "at_zero", "mapping"));
  if (family == "scale_except_zero_section")
    return make_scale_except_zero_section(require_number(j, "factor", "mapping"));
  if (family == "reflect_plateau") return make_reflect_plateau();
  if (family == "band_double") return make_band_double();
  throw ConfigError("mapping.family: unknown family \"" + family + "\"");
}

namespace {

std::function<double(double, double)> phi_from_config(const Json& j) {
  const std::string name = require_string(j, "name", "phi");
  if (name == "one")
    return [](double, double) { return 1.0; };
  if (name == "constant") {
    const double value = require_number(j, "value", "phi");
    return [value](double, double) { return value; };
  }
  if (name == "affine_ts") {
    const double alpha = require_number(j, "alpha", "phi");
    const double beta = require_number(j, "beta", "phi");
    return [alpha, beta](double t, double s) { return alpha * t * s + beta; };
  }
  throw ConfigError("phi.name: unknown name \"" + name + "\"");
}

std::function<double(double)> g_from_config(const Json& j) {
  const std::string name = require_string(j, "name", "g");
  if (name == "zero")
    return [](double) { return 0.0; };
  if (name == "constant") {
    const double value = require_number(j, "value", "g");
    return [value](double) { return value; };
  }
  if (name == "linear") {
    const double a = require_number(j, "a", "g");
    const double b = require_number(j, "b", "g");
    return [a, b](double t) { return a * t + b; };
  }
  if (name == "sine") {
    const double amp = require_number(j, "amp", "g");
    const double freq = require_number(j, "freq", "g");
    return [amp, freq](double t) { return amp * std::sin(freq * t); };
  }
  throw ConfigError("g.name: unknown name \"" + name + "\"");
}

KernelFamily kernel_family_from_string(const std::string& s, const std::string& path) {
  if (s == "linear") return KernelFamily::Linear;
  if (s == "bounded_nonlinear") return KernelFamily::BoundedNonlinear;
  throw ConfigError(path + ".family: unknown family \"" + s + "\"");
}

}  // namespace

GridProblem problem_from_config(const Json& j) {
  const int n = require_int(j, "N", "problem");
  const double k_lip = require_number(j, "k_lip", "problem");
  auto phi = phi_from_config(require_field(j, "phi", "problem"));
  auto g = g_from_config(require_field(j, "g", "problem"));
  auto make_kernel = [&](const char* key) {
    const Json& spec = require_field(j, key, "problem");
    KernelSpec k;
    k.family = kernel_family_from_string(require_string(spec, "family", key), key);
    k.c = require_number(spec, "c", key);
    k.phi = phi;
    k.g = g;
    k.k_lip = k_lip;
    return k;
  };
  try {
    return make_grid_problem(n, make_kernel("K1"), make_kernel("K2"));
  } catch (const Error& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec))
    throw ConfigError("config path is a directory: " + path);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  } catch (const std::ios_base::failure&) {
    // opening can succeed on paths that are not readable as a byte stream
    throw ConfigError("cannot read config file: " + path);
  }
}

}  // namespace cstarfix
