#pragma once

#include <string>
#include <vector>

#include "mclaw/problem.hpp"

// Named property checks behind `verify <suite>` and the acceptance driver.
// Each check states the property it measures, the observed value, and the
// pinned threshold; thresholds live here, not in configuration.

namespace mclaw::checks {

struct CheckResult {
  std::string name;      // suite.check
  std::string property;  // what is being verified, in formula form
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

// canonical scenario builders (the shipped .cfg files mirror these)
Scenario sc_shock_exit(int n = 400);
Scenario sc_boundary_rarefaction(int n = 200);
Scenario sc_tvd_bump_burgers(int n = 200);
Scenario sc_tvd_bump_linear(int n = 200);
Scenario sc_varw_bump(int n = 100);
Scenario sc_band_rotation(int n = 48);
Scenario sc_band_burgers(int n = 64);
Scenario sc_band_burgers_viscous(int n = 48, double eps = 0.1);
Scenario sc_linear_smooth(int n = 100);
Scenario sc_revolution_transport(int n = 64);

// every scenario in `scenario_dir` (*.cfg, sorted); falls back to the
// built-in list when the directory is absent
std::vector<Scenario> shipped_scenarios(const std::string& scenario_dir);

std::vector<CheckResult> geometry_suite();
std::vector<CheckResult> trace_suite();
std::vector<CheckResult> viscous_suite();
std::vector<CheckResult> entropy_suite(const std::string& scenario_dir);
std::vector<CheckResult> contraction_suite();
std::vector<CheckResult> limit_suite();

// suite in {geometry, trace, viscous, entropy, contraction, limit, all}
std::vector<CheckResult> run_suite(const std::string& suite,
                                   const std::string& scenario_dir);

}  // namespace mclaw::checks
