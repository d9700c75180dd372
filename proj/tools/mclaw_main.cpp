#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "mclaw/checks.hpp"
#include "mclaw/config.hpp"
#include "mclaw/harness.hpp"
#include "mclaw/kernels.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailure = 1;
constexpr int kConfigError = 2;

std::vector<double> parse_eps_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t comma = csv.find(',', pos);
    const std::string tok = csv.substr(pos, comma - pos);
    out.push_back(std::stod(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int print_checks(const std::vector<mclaw::checks::CheckResult>& results) {
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-32s measured %.4g (bound %.4g)  %s%s%s\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured,
                r.threshold, r.property.c_str(),
                r.detail.empty() ? "" : "  -- ", r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? kOk : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-volume laboratory for conservation laws on curved "
               "charts with boundary"};
  app.require_subcommand(1);

  std::string cfg_path, out_dir, suite = "all", eps_csv = "0.1,0.05,0.025";
  std::string scenario_dir = "scenarios";
  int levels = 3;

  CLI::App* cmd_run = app.add_subcommand("run", "run one scenario config");
  cmd_run->add_option("config", cfg_path, "scenario .cfg file")->required();
  cmd_run->add_option("--out", out_dir, "output directory override");

  CLI::App* cmd_conv =
      app.add_subcommand("convergence", "refinement study against the oracle");
  cmd_conv->add_option("config", cfg_path)->required();
  cmd_conv->add_option("--levels", levels, "number of refinement levels");
  cmd_conv->add_option("--out", out_dir);

  CLI::App* cmd_verify = app.add_subcommand("verify", "run a property suite");
  cmd_verify
      ->add_option("suite", suite,
                   "geometry|trace|viscous|entropy|contraction|limit|all")
      ->required();
  cmd_verify->add_option("--scenarios", scenario_dir,
                         "directory with the shipped scenario configs");

  CLI::App* cmd_limit =
      app.add_subcommand("limit", "vanishing-viscosity comparison");
  cmd_limit->add_option("config", cfg_path)->required();
  cmd_limit->add_option("--eps", eps_csv, "comma-separated viscosity list");
  cmd_limit->add_option("--out", out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (cmd_run->parsed()) {
      const auto art = mclaw::harness::run(cfg_path, out_dir);
      std::printf("%s: solver=%s status=%s steps=%d snapshots=%d\n",
                  art.dir.string().c_str(), art.solver.c_str(),
                  art.status.c_str(), art.steps, art.snapshots);
      return art.status == "ok" ? kOk : kCheckFailure;
    }
    if (cmd_conv->parsed()) {
      const auto rows = mclaw::harness::convergence(cfg_path, levels, out_dir);
      std::printf("N,l1_error,observed_order\n");
      for (const auto& r : rows)
        std::printf("%d,%.6g,%.3f\n", r.n, r.l1_error, r.observed_order);
      return kOk;
    }
    if (cmd_verify->parsed())
      return print_checks(mclaw::checks::run_suite(suite, scenario_dir));
    if (cmd_limit->parsed()) {
      const auto rows =
          mclaw::harness::limit(cfg_path, parse_eps_list(eps_csv), out_dir);
      std::printf("eps,l1_distance,fitted_rate\n");
      for (const auto& r : rows)
        std::printf("%.6g,%.6g,%.3f\n", r.eps, r.l1_distance, r.rate);
      return kOk;
    }
  } catch (const mclaw::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kCheckFailure;
  }
  return kConfigError;
}
