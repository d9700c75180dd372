#include "mclaw/viscous_solver.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "mclaw/bv_trace.hpp"
#include "solver_core.hpp"

namespace mclaw {

ViscousSolver::ViscousSolver(const Scenario& sc,
                             std::shared_ptr<const StructuredGrid> grid)
    : sc_(sc),
      grid_(std::move(grid)),
      u_(mollify_initial(*grid_, sc.initial.sample(*grid_), sc.viscosity,
                         sc.mollifier)),
      stage1_(*grid_),
      stage2_(*grid_),
      work_(std::make_unique<detail::SolverWork>(*grid_, sc.flux,
                                                 sc.viscosity)) {
  if (!(sc_.viscosity > 0.0))
    throw std::invalid_argument("ViscousSolver: viscosity must be positive");
  linf0_ = kernels::max_abs(u_.values());
  const auto mm = kernels::min_max(u_.values());
  range_ = {std::min(mm.first, 0.0), std::max(mm.second, 0.0)};
}

ViscousSolver::~ViscousSolver() = default;
ViscousSolver::ViscousSolver(ViscousSolver&&) noexcept = default;

void ViscousSolver::set_state(const CellField& u) {
  require_grid(*grid_, u);
  u_ = u;
  linf0_ = kernels::max_abs(u_.values());
  const auto mm = kernels::min_max(u_.values());
  range_ = {std::min(mm.first, 0.0), std::max(mm.second, 0.0)};
}

double ViscousSolver::stable_dt_now() const {
  return stable_dt(sc_, *grid_, t_, range_);
}

void ViscousSolver::euler_stage(const CellField& in, double t, double dt,
                                CellField& out, double* boundary_flux) {
  detail::SolverWork& w = *work_;
  std::fill(w.net.begin(), w.net.end(), 0.0);
  detail::fill_advective_faces(*grid_, sc_.flux, in.values(), t, 0.0, w);
  flux_divergence_add(*grid_, w.adv, w.net);
  double bflux = boundary_flux_total(*grid_, w.adv);
  bflux += detail::add_diffusion(*grid_, in.values(), w);
  kernels::update_cells(out.values(), in.values(), w.net,
                        grid_->inv_cell_volumes(), dt);
  if (boundary_flux) *boundary_flux = bflux;
}

void ViscousSolver::step(double dt) {
  double bf1 = 0.0, bf2 = 0.0;
  euler_stage(u_, t_, dt, stage1_, &bf1);
  euler_stage(stage1_, t_ + dt, dt, stage2_, &bf2);
  kernels::lincomb2(stage1_.values(), 0.5, u_.values(), 0.5, stage2_.values());
  last_boundary_flux_ = 0.5 * (bf1 + bf2);
  last_dudt_l1_ = kernels::l1_diff_weighted(stage1_.values(), u_.values(),
                                            grid_->cell_volumes()) /
                  dt;
  std::swap(u_, stage1_);
  t_ += dt;
  ++steps_;
  const double linf = kernels::max_abs(u_.values());
  if (!std::isfinite(linf) || linf > 1.1 * linf0_ + 1e-12)
    throw SolverAbort("viscous step diverged: |u|_inf = " +
                          std::to_string(linf) + " at t = " +
                          std::to_string(t_),
                      steps_, t_, linf);
}

ViscousResult solve_viscous(const Scenario& sc) {
  if (!(sc.viscosity > 0.0))
    throw std::invalid_argument("solve_viscous: needs viscosity > 0");
  auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
  ViscousSolver solver(sc, grid);
  ViscousResult res{.grid = grid,
                    .series = {},
                    .snapshots = {},
                    .snapshot_steps = {},
                    .final_state = solver.state(),
                    .max_dudt_l1 = 0.0,
                    .steps = 0};

  const std::vector<double> outs = output_times(sc.horizon, sc.cadence);
  double dudt_window = 0.0;
  auto emit = [&](double t) {
    SeriesRecord r;
    r.t = t;
    r.linf = kernels::max_abs(solver.state().values());
    const bv::TVReport tv = bv::total_variation(*grid, solver.state());
    r.tv_jump = tv.tv_jump;
    r.tv_gradient = tv.tv_gradient;
    r.dudt_l1 = dudt_window;
    r.mass =
        kernels::dot(solver.state().values(), grid->cell_volumes());
    res.series.push_back(r);
    res.snapshots.emplace_back(t, solver.state());
    res.snapshot_steps.push_back(solver.steps());
    dudt_window = 0.0;
  };

  emit(0.0);
  for (std::size_t m = 1; m < outs.size(); ++m) {
    const double target = outs[m];
    while (solver.time() < target - 1e-12) {
      const double dt =
          std::min(solver.stable_dt_now(), target - solver.time());
      solver.step(dt);
      dudt_window = std::max(dudt_window, solver.last_dudt_l1());
      res.max_dudt_l1 = std::max(res.max_dudt_l1, solver.last_dudt_l1());
    }
    emit(target);
  }
  res.final_state = solver.state();
  res.steps = solver.steps();
  return res;
}

double time_derivative_l1(const std::vector<SeriesRecord>& series) {
  double worst = 0.0;
  for (const SeriesRecord& r : series) worst = std::max(worst, r.dudt_l1);
  return worst;
}

TvEnvelope fit_tv_envelope(const std::vector<SeriesRecord>& series, double tv0,
                           double horizon) {
  TvEnvelope best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 30; ++i) {
    const double c3 = 0.1 * i;
    double c2 = 0.0;
    for (const SeriesRecord& r : series) {
      if (r.t <= 0.0) continue;
      const double growth = 1.0 + c3 * r.t * std::exp(c3 * r.t);
      c2 = std::max(c2, (r.tv_jump / (tv0 * growth) - 1.0) / r.t);
    }
    if (c2 + c3 < best_score) {
      best_score = c2 + c3;
      best.c2 = c2;
      best.c3 = c3;
    }
  }
  best.value_at_horizon =
      (1.0 + best.c2 * horizon) * tv0 *
      (1.0 + best.c3 * horizon * std::exp(best.c3 * horizon));
  return best;
}

}  // namespace mclaw
