#pragma once

#include <map>
#include <string>
#include <vector>

#include "landau/core.hpp"

namespace landau {

/// Raised for malformed configuration input; the CLI maps it to exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Run-wide knobs. Defaults pin the dimensionless reference setup
/// (hbar = m = c = 1, q = 1, B = 2, so omega = 2 and omega_osc = 1).
struct RunConfig {
  FieldParams field;

  int grid_n = 256;
  double grid_l = 24.0;
  double dt = 1e-3;

  int max_quanta = 20;
  int quad_order = 64;
  int taps = 6;

  unsigned long long seed = 42;
  std::vector<double> thetas;  // angles for coefficient tables

  std::string out_dir = "out";
  std::string format = "json";  // json|csv

  std::map<std::string, double> tol;

  RunConfig();

  /// Throws ConfigError on violated invariants (positive tolerances,
  /// power-of-two grid, known format).
  void validate() const;

  double tolerance(const std::string& name) const;
};

/// key = value file, '#' comments, blank lines ignored. Unknown keys are
/// an error. Returns defaults when path is empty.
RunConfig load_config(const std::string& path);

/// Applies one key=value override (same keys as the file format).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace landau
