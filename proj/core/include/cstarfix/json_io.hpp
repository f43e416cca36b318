#pragma once

#include <string>

#include "json.hpp"

#include "cstarfix/fixpoint.hpp"
#include "cstarfix/integral.hpp"
#include "cstarfix/metric.hpp"

namespace cstarfix {

using Json = nlohmann::json;

// Matrix wire format: { "dim": n, "re": [[...]], "im": [[...]] }, row-major.
// Serialisation round-trips finite doubles bit-exactly.
Json to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

Json to_json(const Point& p);
Point point_from_json(const Json& j);

Json to_json(const AxiomReport& report);
Json to_json(const ContractionCertificate& cert);
Json to_json(const SolveOutcome& outcome);
Json to_json(const CompatibilityReport& report);
Json to_json(const WeakCompatibilityReport& report);
Json to_json(const HypothesesReport& report);

/// Node/value pairs plus convergence metadata for a grid solve.
Json solution_to_json(const GridProblem& p, const SolveOutcome& outcome);

// Config parsers. All throw ConfigError with a field path on schema
// violations.

/// {"kind":"diag","k":2.0} or {"kind":"multiplication","n":201}
CStarMetric metric_from_config(const Json& j);

/// {"family":"affine","alpha":a,"beta":b}
/// {"family":"identity"}
/// {"family":"scale_except_zero","factor":f,"at_zero":v}
/// {"family":"scale_except_zero_section","factor":f}
/// {"family":"reflect_plateau"} | {"family":"band_double"}
Mapping mapping_from_config(const Json& j);

/// { "N":201, "K1":{"family":"linear","c":0.5}, "K2":{...},
///   "phi":{"name":"one"} | {"name":"constant","value":v}
///        | {"name":"affine_ts","alpha":a,"beta":b},
///   "g":{"name":"zero"} | {"name":"constant","value":v}
///      | {"name":"linear","a":a,"b":b} | {"name":"sine","amp":a,"freq":f},
///   "k_lip":0.5 }
GridProblem problem_from_config(const Json& j);

/// Reads and parses a JSON file; ConfigError on IO or parse failure.
Json load_json_file(const std::string& path);

}  // namespace cstarfix
