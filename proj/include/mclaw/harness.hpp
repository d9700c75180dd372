#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mclaw/config.hpp"
#include "mclaw/oracles.hpp"

// Run persistence, convergence studies, and the viscosity-limit driver.
// A completed run leaves behind run.json (scenario echo, status, monitors,
// wall time), series.csv, field snapshots u_<step>.csv, and for hyperbolic
// runs trace_<time>.csv / bln_<time>.csv. Re-running the same config
// reproduces every CSV byte for byte.

namespace mclaw::harness {

// MCLAW_OUTPUT_ROOT in the environment, "runs" otherwise
std::filesystem::path output_root();

struct RunArtifact {
  std::filesystem::path dir;
  std::string solver;  // "viscous" or "hyperbolic"
  std::string status;  // "ok" or "aborted: <reason>"
  int snapshots = 0;
  int steps = 0;
};

RunArtifact run(const std::string& config_path,
                const std::string& out_dir_override = "");

struct RateRow {
  int n = 0;
  double l1_error = 0.0;
  double observed_order = 0.0;  // 0 in the first row
};

// Runs at N, 2N, 4N, ... against the scenario's oracle (characteristic
// tracing for linear flux, the closed forms for the two Burgers interval
// cases); writes rates.csv into the run directory.
std::vector<RateRow> convergence(const std::string& config_path, int levels,
                                 const std::string& out_dir_override = "");

// solve_viscous per eps against one matched hyperbolic run; writes
// viscosity_limit.csv.
std::vector<oracles::LimitRow> limit(const std::string& config_path,
                                     const std::vector<double>& eps_list,
                                     const std::string& out_dir_override = "");

// oracle lookup used by `convergence`; throws ConfigError when the scenario
// has none
oracles::SpaceTimeFn oracle_for(const Scenario& sc);

std::string format_time_tag(double t);

}  // namespace mclaw::harness
