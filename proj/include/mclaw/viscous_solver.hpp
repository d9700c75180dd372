#pragma once

#include <limits>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mclaw/problem.hpp"

// Method-of-lines solver for the parabolic regularization: Godunov advection
// plus eps * Laplace-Beltrami diffusion with homogeneous Dirichlet boundary,
// Heun time stepping, mollified initial data. Heun is the average of two
// bound-preserving Euler stages under the stable_dt CFL, so the discrete
// maximum principle survives the second-order stepping.

namespace mclaw {

struct SeriesRecord {
  double t = 0.0;
  double linf = 0.0;
  double tv_jump = 0.0;
  double tv_gradient = 0.0;
  double dudt_l1 = 0.0;  // max L1 time-difference quotient since last record
  double mass = 0.0;
  // filled by the hyperbolic solver only
  double entropy_cell_resid_max = std::numeric_limits<double>::quiet_NaN();
  double bln_resid_max = std::numeric_limits<double>::quiet_NaN();
  double boundary_mass_flux = std::numeric_limits<double>::quiet_NaN();
};

class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& msg, int step, double t, double linf)
      : std::runtime_error(msg), step(step), t(t), linf(linf) {}
  int step;
  double t;
  double linf;
};

namespace detail {
struct SolverWork;
}

class ViscousSolver {
 public:
  ViscousSolver(const Scenario& sc, std::shared_ptr<const StructuredGrid> grid);
  ~ViscousSolver();
  ViscousSolver(ViscousSolver&&) noexcept;

  void step(double dt);  // one Heun step; throws SolverAbort on blow-up
  double stable_dt_now() const;
  double time() const { return t_; }
  int steps() const { return steps_; }
  const CellField& state() const { return u_; }
  // test hook: replace the state (resets the blow-up reference and range)
  void set_state(const CellField& u);
  const StructuredGrid& grid() const { return *grid_; }
  std::pair<double, double> u_range() const { return range_; }
  // signed outward boundary flux (advective + diffusive) of the last step,
  // averaged over the Heun stages
  double last_boundary_flux() const { return last_boundary_flux_; }
  double last_dudt_l1() const { return last_dudt_l1_; }

 private:
  void euler_stage(const CellField& in, double t, double dt, CellField& out,
                   double* boundary_flux);

  Scenario sc_;
  std::shared_ptr<const StructuredGrid> grid_;
  CellField u_;
  CellField stage1_, stage2_;
  std::unique_ptr<detail::SolverWork> work_;
  double t_ = 0.0;
  int steps_ = 0;
  double linf0_ = 0.0;
  std::pair<double, double> range_{0.0, 0.0};
  double last_boundary_flux_ = 0.0;
  double last_dudt_l1_ = 0.0;
};

struct ViscousResult {
  std::shared_ptr<const StructuredGrid> grid;
  std::vector<SeriesRecord> series;
  std::vector<std::pair<double, CellField>> snapshots;  // at output times
  std::vector<int> snapshot_steps;  // solver step count at each snapshot
  CellField final_state;
  double max_dudt_l1 = 0.0;
  int steps = 0;
};

ViscousResult solve_viscous(const Scenario& sc);

// max over consecutive records of the recorded time-difference quotient
double time_derivative_l1(const std::vector<SeriesRecord>& series);

// smallest envelope (1 + c2 t) tv0 (1 + c3 t e^{c3 t}) dominating the
// recorded tv_jump curve; deterministic grid search over c3
struct TvEnvelope {
  double c2 = 0.0;
  double c3 = 0.0;
  double value_at_horizon = 0.0;
};
TvEnvelope fit_tv_envelope(const std::vector<SeriesRecord>& series, double tv0,
                           double horizon);

std::vector<double> output_times(double horizon, double cadence);

}  // namespace mclaw
