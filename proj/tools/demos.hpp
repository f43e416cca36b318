#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cstarfix/json_io.hpp"

namespace cstarfix::demos {

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct DemoResult {
  Json report;
  std::vector<Assertion> assertions;

  bool pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }
};

struct DemoOptions {
  Tolerances tol;
  int max_iter = 10000;
  std::uint64_t seed = 1729;
  Json overrides;  // demo-specific knobs (k, N, conv_tol, x0, ...)
};

const std::vector<std::string>& demo_ids();

/// Runs one scenario. Throws ConfigError on an unknown id or bad overrides.
DemoResult run_demo(const std::string& id, const DemoOptions& opts);

/// Deterministic point samples shared by the check command and the demos.
std::vector<Point> make_scalar_points(std::size_t count, double lo, double hi,
                                      std::uint64_t seed);
std::vector<Point> make_grid_points(std::size_t count, int grid_size,
                                    double amplitude, std::uint64_t seed);

}  // namespace cstarfix::demos
