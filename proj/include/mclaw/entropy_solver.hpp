#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "mclaw/bv_trace.hpp"
#include "mclaw/problem.hpp"
#include "mclaw/viscous_solver.hpp"

// Monotone finite-volume solver for the hyperbolic problem. Forward Euler +
// Godunov faces keep the per-step Crandall-Majda entropy inequality exact;
// boundary faces see the exterior state 0, which enforces the
// characteristic boundary condition weakly: outflow states pass through,
// inflow sees the datum.

namespace mclaw {

// Advective face fluxes with ghost state `ghost` on the transverse sides.
// f0 is (n0+1) x n1 in +axis0 orientation; f1 stores per row n1+1 entries
// (wrap face duplicated) in +axis1 orientation, empty in 1D.
struct FaceFluxes {
  std::vector<double> f0;
  std::vector<double> f1;
};

void advective_face_fluxes(const StructuredGrid& grid, const FluxFamily& flux,
                           std::span<const double> u, double t, double ghost,
                           FaceFluxes& out);
// net[c] += sum of outward face fluxes of cell c
void flux_divergence_add(const StructuredGrid& grid, const FaceFluxes& f,
                         std::span<double> net);
// signed outward flux through the boundary sides
double boundary_flux_total(const StructuredGrid& grid, const FaceFluxes& f);

struct EntropyCheckConfig {
  int kruzkov_levels = 21;      // uniform on [-|u0|_inf, |u0|_inf]
  int k_samples_boundary = 101;  // samples of I(Tu, 0) in bln_residual
  int phi_lattice = 3;           // test-function centers per axis
  double eta = 1e-3;             // S_eta / s_eta diagnostics
};

// smoothed absolute value and its derivative (the classical regularization)
double entropy_S_eta(double z, double eta);
double entropy_s_eta(double z, double eta);

// max over cells of the positive part of the cell entropy imbalance
//   |u_new - k| - |u_old - k| + dt/V * (face differences of Q)
// with Q(a,b) = G(a v k, b v k) - G(a ^ k, b ^ k); boundary slots carry the
// exterior state 0 before clipping.
double entropy_residual_cells(const StructuredGrid& grid,
                              const FluxFamily& flux,
                              std::span<const double> u_old,
                              std::span<const double> u_new, double dt,
                              double t, double k);

// |min over I(Tu,0) of sgn(Tu) <f(Tu) - f(k), N>_g|, zero for Tu = 0
double bln_residual(const FluxFamily& flux, const ChartGeometry& geom,
                    double trace_value, const StructuredGrid::BoundaryFace& face,
                    double t, const EntropyCheckConfig& cfg = {});

class HyperbolicSolver {
 public:
  HyperbolicSolver(const Scenario& sc,
                   std::shared_ptr<const StructuredGrid> grid);
  ~HyperbolicSolver();
  HyperbolicSolver(HyperbolicSolver&&) noexcept;

  void step(double dt);  // forward Euler; throws SolverAbort on blow-up
  double stable_dt_now() const;
  double time() const { return t_; }
  int steps() const { return steps_; }
  const CellField& state() const { return u_; }
  void set_state(const CellField& u);
  const StructuredGrid& grid() const { return *grid_; }
  std::pair<double, double> u_range() const { return range_; }
  double last_boundary_flux() const { return last_boundary_flux_; }
  double last_dudt_l1() const { return last_dudt_l1_; }
  // max entropy_residual_cells over the configured Kruzkov levels for the
  // last step (NaN before the first step or when monitoring is off)
  double last_entropy_residual() const { return last_entropy_residual_; }

 private:
  Scenario sc_;
  std::shared_ptr<const StructuredGrid> grid_;
  CellField u_, u_next_;
  std::unique_ptr<detail::SolverWork> work_;
  std::vector<double> kruzkov_;
  double t_ = 0.0;
  int steps_ = 0;
  double linf0_ = 0.0;
  std::pair<double, double> range_{0.0, 0.0};
  double last_boundary_flux_ = 0.0;
  double last_dudt_l1_ = 0.0;
  double last_entropy_residual_ = 0.0;
};

struct HyperbolicResult {
  std::shared_ptr<const StructuredGrid> grid;
  std::vector<SeriesRecord> series;
  std::vector<std::pair<double, CellField>> snapshots;
  std::vector<int> snapshot_steps;
  std::vector<std::pair<double, bv::TraceField>> traces;
  CellField final_state;
  double max_dudt_l1 = 0.0;
  double max_entropy_residual = 0.0;
  int steps = 0;
  // full trajectory (every step) when requested: (t, dt, state before step)
  std::vector<double> step_times;
  std::vector<double> step_sizes;
  std::vector<CellField> trajectory;
};

struct HyperbolicOptions {
  bool store_trajectory = false;
};

HyperbolicResult solve_hyperbolic(const Scenario& sc,
                                  const HyperbolicOptions& opt = {});

// min over (k, phi) pairs of the discretized entropy inequality left-hand
// side; needs a result with store_trajectory = true.
double entropy_residual_weak(const Scenario& sc, const HyperbolicResult& run,
                             const EntropyCheckConfig& cfg = {});

// L1 distances of two runs differing only in initial data, stepped with a
// common dt so the Crandall-Tartar contraction applies exactly; one entry
// per output time.
std::vector<std::pair<double, double>> l1_contraction_check(
    const Scenario& sc, const InitialSpec& u0_a, const InitialSpec& u0_b);

}  // namespace mclaw
