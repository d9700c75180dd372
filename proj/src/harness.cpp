#include "mclaw/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>

#include "mclaw/bv_trace.hpp"
#include "mclaw/entropy_solver.hpp"
#include "mclaw/kernels.hpp"
#include "mclaw/viscous_solver.hpp"

namespace mclaw::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "mclaw 0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string config_stem(const std::string& path) {
  return fs::path(path).stem().string();
}

json scenario_echo(const Scenario& sc) {
  json j;
  j["geometry"] = sc.geom.describe();
  j["dim"] = sc.geom.dim();
  j["flux_h"] = sc.flux.h_kind == HKind::linear ? "linear" : "burgers";
  j["a_value"] = sc.flux.a_value;
  j["c_value"] = sc.flux.c_value;
  j["horizon"] = sc.horizon;
  j["resolution"] = sc.resolution;
  j["cfl"] = sc.cfl;
  j["viscosity"] = sc.viscosity;
  j["cadence"] = sc.cadence;
  j["kruzkov_levels"] = sc.kruzkov_levels;
  return j;
}

void write_series_csv(const fs::path& file,
                      const std::vector<SeriesRecord>& series, bool hyperbolic) {
  std::ofstream os(file);
  os << "t,linf,tv_jump,tv_gradient,dudt_l1,mass";
  if (hyperbolic) os << ",entropy_cell_resid_max,bln_resid_max,mass_flux_boundary";
  os << '\n';
  for (const SeriesRecord& r : series) {
    os << fmt(r.t) << ',' << fmt(r.linf) << ',' << fmt(r.tv_jump) << ','
       << fmt(r.tv_gradient) << ',' << fmt(r.dudt_l1) << ',' << fmt(r.mass);
    if (hyperbolic)
      os << ',' << fmt(r.entropy_cell_resid_max) << ',' << fmt(r.bln_resid_max)
         << ',' << fmt(r.boundary_mass_flux);
    os << '\n';
  }
}

void write_snapshot(const fs::path& dir, int step, const CellField& u) {
  std::ofstream os(dir / ("u_" + std::to_string(step) + ".csv"));
  write_field_csv(os, u);
}

void write_trace_csv(const fs::path& dir, double t, const StructuredGrid& grid,
                     const bv::TraceField& tf) {
  std::ofstream os(dir / ("trace_" + format_time_tag(t) + ".csv"));
  os << "face,coordinate,Tu,residual\n";
  const auto faces = grid.boundary_faces();
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const double coord = grid.dim() == 2 ? faces[k].center.z1
                                         : faces[k].center.z0;
    os << k << ',' << fmt(coord) << ',' << fmt(tf.values[k]) << ','
       << fmt(tf.residual[k]) << '\n';
  }
}

void write_bln_csv(const fs::path& dir, double t, const Scenario& sc,
                   const StructuredGrid& grid, const bv::TraceField& tf) {
  std::ofstream os(dir / ("bln_" + format_time_tag(t) + ".csv"));
  os << "face,coordinate,Tu,bln_residual\n";
  const auto faces = grid.boundary_faces();
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const double coord = grid.dim() == 2 ? faces[k].center.z1
                                         : faces[k].center.z0;
    const double r =
        bln_residual(sc.flux, grid.geometry(), tf.values[k], faces[k], t);
    os << k << ',' << fmt(coord) << ',' << fmt(tf.values[k]) << ',' << fmt(r)
       << '\n';
  }
}

// fitted constants recorded with every run: c1 bounds the time-derivative
// quotient by tv(u0), (c2, c3) are the TV growth envelope, c4 the space-time
// H^{1,1} surrogate; viscous runs add the mollifier constant c0
template <class Result>
json fitted_constants(const Scenario& sc, const Result& res, double tv0) {
  json j;
  const TvEnvelope env = fit_tv_envelope(res.series, std::max(tv0, 1e-300),
                                         sc.horizon);
  j["c1"] = tv0 > 0.0 ? res.max_dudt_l1 / tv0 : 0.0;
  j["c2"] = env.c2;
  j["c3"] = env.c3;
  double c4 = 0.0;
  for (std::size_t m = 0; m < res.snapshots.size(); ++m) {
    const double t_lo =
        m == 0 ? res.snapshots[m].first : res.snapshots[m - 1].first;
    const double t_hi = m + 1 == res.snapshots.size()
                            ? res.snapshots[m].first
                            : res.snapshots[m + 1].first;
    const double w = 0.5 * (t_hi - t_lo);
    const double l1 = kernels::l1_weighted(res.snapshots[m].second.values(),
                                           res.grid->cell_volumes());
    c4 += w * (l1 + res.series[m].dudt_l1 + res.series[m].tv_gradient);
  }
  j["c4"] = c4;
  return j;
}

}  // namespace

std::string format_time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

fs::path output_root() {
  if (const char* env = std::getenv("MCLAW_OUTPUT_ROOT")) return fs::path(env);
  return fs::path("runs");
}

RunArtifact run(const std::string& config_path,
                const std::string& out_dir_override) {
  const Scenario sc = load_scenario(config_path);
  const fs::path dir = out_dir_override.empty()
                           ? output_root() / config_stem(config_path)
                           : fs::path(out_dir_override);
  fs::create_directories(dir);

  RunArtifact art;
  art.dir = dir;
  art.solver = sc.viscosity > 0.0 ? "viscous" : "hyperbolic";
  art.status = "ok";

  json j;
  j["config"] = config_path;
  j["scenario"] = scenario_echo(sc);
  j["solver"] = art.solver;
  j["version"] = kVersion;
  j["kernels"] = kernels::backend_name();

  const auto t0 = std::chrono::steady_clock::now();
  try {
    const StructuredGrid probe = sc.make_grid();
    const CellField raw0 = sc.initial.sample(probe);
    const double tv0 = bv::total_variation(probe, raw0).tv_jump;
    if (sc.viscosity > 0.0) {
      const ViscousResult res = solve_viscous(sc);
      write_series_csv(dir / "series.csv", res.series, false);
      for (std::size_t m = 0; m < res.snapshots.size(); ++m)
        write_snapshot(dir, res.snapshot_steps[m], res.snapshots[m].second);
      art.snapshots = static_cast<int>(res.snapshots.size());
      art.steps = res.steps;
      j["series_columns"] = {"t",      "linf",    "tv_jump",
                             "tv_gradient", "dudt_l1", "mass"};
      j["monitors"] = {{"max_dudt_l1", res.max_dudt_l1}};
      j["fitted"] = fitted_constants(sc, res, tv0);
      // mollifier constant: eps * H^{2,1} surrogate of u0_eps over tv(u0)
      const CellField& u0e = res.snapshots.front().second;
      const double l1 =
          kernels::l1_weighted(u0e.values(), res.grid->cell_volumes());
      const double g1 = bv::total_variation(*res.grid, u0e).tv_gradient;
      const CellField lap =
          discrete_laplace(*res.grid, u0e, BoundaryMode::dirichlet_zero);
      const double l2 =
          kernels::l1_weighted(lap.values(), res.grid->cell_volumes());
      j["fitted"]["c0"] =
          tv0 > 0.0 ? sc.viscosity * (l1 + g1 + l2) / tv0 : 0.0;
    } else {
      const HyperbolicResult res = solve_hyperbolic(sc);
      write_series_csv(dir / "series.csv", res.series, true);
      for (std::size_t m = 0; m < res.snapshots.size(); ++m) {
        write_snapshot(dir, res.snapshot_steps[m], res.snapshots[m].second);
        write_trace_csv(dir, res.snapshots[m].first, *res.grid,
                        res.traces[m].second);
        write_bln_csv(dir, res.snapshots[m].first, sc, *res.grid,
                      res.traces[m].second);
      }
      art.snapshots = static_cast<int>(res.snapshots.size());
      art.steps = res.steps;
      j["series_columns"] = {"t",       "linf",
                             "tv_jump", "tv_gradient",
                             "dudt_l1", "mass",
                             "entropy_cell_resid_max", "bln_resid_max",
                             "mass_flux_boundary"};
      j["monitors"] = {{"max_dudt_l1", res.max_dudt_l1},
                       {"max_entropy_residual", res.max_entropy_residual}};
      j["fitted"] = fitted_constants(sc, res, tv0);
    }
  } catch (const SolverAbort& abort) {
    art.status = std::string("aborted: ") + abort.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  j["status"] = art.status;
  j["snapshots"] = art.snapshots;
  j["steps"] = art.steps;
  j["wall_time_s"] =
      std::chrono::duration_cast<std::chrono::duration<double>>(t1 - t0)
          .count();
  std::ofstream(dir / "run.json") << j.dump(2) << '\n';
  return art;
}

oracles::SpaceTimeFn oracle_for(const Scenario& sc) {
  if (sc.flux.h_kind == HKind::linear) {
    const double h = sc.geom.extent(0) / sc.resolution.front();
    auto tracer = std::make_shared<oracles::CharacteristicTracer>(
        sc.geom, sc.flux, 0.25 * h);
    auto u0 = [initial = sc.initial, geom = sc.geom](Point z) {
      return initial.evaluate(geom, z);
    };
    return [tracer, u0](Point z, double t) {
      return tracer->solution(u0, z, t);
    };
  }
  // Burgers closed forms on the unit interval
  if (sc.geom.kind() == GeometryKind::weighted_interval && sc.geom.beta() == 0.0 &&
      sc.geom.lo(0) == 0.0 && sc.geom.hi(0) == 1.0 && sc.flux.a_value == 1.0 &&
      sc.flux.a_kind == AKind::constant) {
    if (sc.initial.profile == InitialSpec::Profile::step &&
        sc.initial.left == 1.0 && sc.initial.right == 0.0 &&
        sc.initial.jump_at == 0.8)
      return [](Point z, double t) {
        return oracles::burgers_interval_exact(oracles::BurgersCase::shock_exit,
                                               z.z0, t);
      };
    if (sc.initial.profile == InitialSpec::Profile::constant &&
        sc.initial.value == -1.0)
      return [](Point z, double t) {
        return oracles::burgers_interval_exact(
            oracles::BurgersCase::boundary_rarefaction, z.z0, t);
      };
  }
  throw ConfigError("scenario has no oracle for a convergence study");
}

std::vector<RateRow> convergence(const std::string& config_path, int levels,
                                 const std::string& out_dir_override) {
  if (levels < 2) throw ConfigError("convergence: need at least 2 levels");
  const Scenario base = load_scenario(config_path);
  const oracles::SpaceTimeFn oracle = oracle_for(base);
  const fs::path dir = out_dir_override.empty()
                           ? output_root() / config_stem(config_path)
                           : fs::path(out_dir_override);
  fs::create_directories(dir);

  std::vector<RateRow> rows;
  for (int level = 0; level < levels; ++level) {
    Scenario sc = base;
    sc.monitor_entropy = false;
    for (int& n : sc.resolution) n <<= level;
    double err;
    if (sc.viscosity > 0.0) {
      const ViscousResult res = solve_viscous(sc);
      err = oracles::l1_error(*res.grid, res.final_state, oracle, sc.horizon);
    } else {
      const HyperbolicResult res = solve_hyperbolic(sc);
      err = oracles::l1_error(*res.grid, res.final_state, oracle, sc.horizon);
    }
    RateRow row;
    row.n = sc.resolution.front();
    row.l1_error = err;
    if (!rows.empty() && err > 0.0 && rows.back().l1_error > 0.0)
      row.observed_order = std::log2(rows.back().l1_error / err);
    rows.push_back(row);
  }
  std::ofstream os(dir / "rates.csv");
  os << "N,l1_error,observed_order\n";
  for (const RateRow& r : rows)
    os << r.n << ',' << fmt(r.l1_error) << ',' << fmt(r.observed_order) << '\n';
  return rows;
}

std::vector<oracles::LimitRow> limit(const std::string& config_path,
                                     const std::vector<double>& eps_list,
                                     const std::string& out_dir_override) {
  const Scenario sc = load_scenario(config_path);
  const auto rows = oracles::viscosity_limit_study(sc, eps_list);
  const fs::path dir = out_dir_override.empty()
                           ? output_root() / config_stem(config_path)
                           : fs::path(out_dir_override);
  fs::create_directories(dir);
  std::ofstream os(dir / "viscosity_limit.csv");
  os << "eps,l1_distance,fitted_rate\n";
  for (const auto& r : rows)
    os << fmt(r.eps) << ',' << fmt(r.l1_distance) << ',' << fmt(r.rate) << '\n';
  return rows;
}

}  // namespace mclaw::harness
