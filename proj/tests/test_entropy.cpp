#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "mclaw/entropy_solver.hpp"
#include "mclaw/kernels.hpp"
#include "mclaw/oracles.hpp"

using namespace mclaw;
using std::numbers::pi;

namespace {

Scenario shock_exit(int n) {
  Scenario sc;
  sc.name = "shock_exit";
  sc.geom = ChartGeometry::weighted_interval(0.0, 1.0);
  sc.flux = FluxFamily{.h_kind = HKind::burgers, .a_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::step;
  sc.initial.left = 1.0;
  sc.initial.right = 0.0;
  sc.initial.jump_at = 0.8;
  sc.resolution = {n};
  sc.horizon = 1.0;
  sc.cadence = 0.25;
  return sc;
}

Scenario tvd_bump(int n, HKind h) {
  Scenario sc;
  sc.geom = ChartGeometry::weighted_interval(0.0, 1.0);
  sc.flux = FluxFamily{.h_kind = h, .a_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::bump;
  sc.initial.center = 0.3;
  sc.initial.width = 0.18;
  sc.resolution = {n};
  sc.horizon = 0.4;
  sc.cadence = 0.1;
  return sc;
}

Scenario band_rotation(int n) {
  Scenario sc;
  sc.name = "band_rotation";
  sc.geom = ChartGeometry::spherical_band(pi / 4, pi / 2);
  sc.flux = FluxFamily{.h_kind = HKind::linear, .a_value = 0.0, .c_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::sine;
  sc.initial.azimuthal_mode = 3;
  sc.initial.azimuthal_weight = 0.6;
  sc.resolution = {n, 2 * n};
  sc.horizon = 0.5;
  sc.cadence = 0.25;
  return sc;
}

}  // namespace

TEST_CASE("boundary godunov fluxes of the constant-one state") {
  Scenario sc = shock_exit(10);
  sc.initial.profile = InitialSpec::Profile::constant;
  sc.initial.value = 1.0;
  const StructuredGrid grid = sc.make_grid();
  const CellField u = sc.initial.sample(grid);
  FaceFluxes f;
  advective_face_fluxes(grid, sc.flux, u.values(), 0.0, 0.0, f);
  // inflow at x=0 admits no flux, outflow at x=1 passes h(1) = 1/2
  CHECK(f.f0.front() == doctest::Approx(0.0));
  CHECK(f.f0.back() == doctest::Approx(0.5));
}

TEST_CASE("purely azimuthal flux conserves mass to rounding") {
  const Scenario sc = band_rotation(16);
  auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
  HyperbolicSolver solver(sc, grid);
  const double m0 = kernels::dot(solver.state().values(), grid->cell_volumes());
  for (int i = 0; i < 10; ++i) solver.step(solver.stable_dt_now());
  const double m1 = kernels::dot(solver.state().values(), grid->cell_volumes());
  CHECK(std::fabs(m1 - m0) < 1e-12);
  CHECK(std::fabs(solver.last_boundary_flux()) < 1e-15);
}

TEST_CASE("per-step conservation equals boundary godunov flux") {
  const Scenario sc = shock_exit(64);
  auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
  HyperbolicSolver solver(sc, grid);
  for (int i = 0; i < 8; ++i) {
    const double m0 =
        kernels::dot(solver.state().values(), grid->cell_volumes());
    const double dt = solver.stable_dt_now();
    solver.step(dt);
    const double m1 =
        kernels::dot(solver.state().values(), grid->cell_volumes());
    CHECK(m1 - m0 ==
          doctest::Approx(-dt * solver.last_boundary_flux()).epsilon(1e-12));
  }
}

TEST_CASE("zero data stays zero") {
  Scenario sc = shock_exit(32);
  sc.initial.profile = InitialSpec::Profile::constant;
  sc.initial.value = 0.0;
  const HyperbolicResult res = solve_hyperbolic(sc);
  CHECK(kernels::max_abs(res.final_state.values()) == 0.0);
}

TEST_CASE("exact maximum principle and 1D TVD per step") {
  for (HKind h : {HKind::linear, HKind::burgers}) {
    const Scenario sc = tvd_bump(100, h);
    auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
    HyperbolicSolver solver(sc, grid);
    const auto mm0 = kernels::min_max(solver.state().values());
    double tv_prev = bv::total_variation(*grid, solver.state()).tv_jump;
    while (solver.time() < sc.horizon - 1e-12) {
      solver.step(std::min(solver.stable_dt_now(), sc.horizon - solver.time()));
      const auto mm = kernels::min_max(solver.state().values());
      CHECK(mm.first >= std::min(mm0.first, 0.0) - 1e-12);
      CHECK(mm.second <= std::max(mm0.second, 0.0) + 1e-12);
      const double tv = bv::total_variation(*grid, solver.state()).tv_jump;
      CHECK(tv <= tv_prev + 1e-12);
      tv_prev = tv;
    }
  }
}

TEST_CASE("cell entropy residual vanishes for the monotone update") {
  const Scenario sc = shock_exit(100);
  auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
  HyperbolicSolver solver(sc, grid);
  for (int i = 0; i < 20; ++i) solver.step(solver.stable_dt_now());
  CHECK(solver.last_entropy_residual() <= 1e-12);

  // constant state stepped once: the positive part vanishes for every k
  HyperbolicSolver cs(sc, grid);
  cs.set_state(CellField(*grid, 0.7));
  const CellField before = cs.state();
  const double dtc = cs.stable_dt_now();
  cs.step(dtc);
  for (double k : {-1.0, 0.3, 0.5, 2.0})
    CHECK(entropy_residual_cells(*grid, sc.flux, before.values(),
                                 cs.state().values(), dtc, 0.0, k) <= 1e-12);
}

TEST_CASE("a non-monotone flux is flagged by the entropy residual") {
  const Scenario sc = shock_exit(50);
  const StructuredGrid grid = sc.make_grid();
  CellField u(grid);
  for (int i = 0; i < grid.n0(); ++i)
    u[i] = grid.center0(i) < 0.5 ? 1.0 : -1.0;  // entropy-violating data
  // central-average flux instead of the Godunov flux
  const double dt = 0.2 * grid.dz0();
  CellField v(grid);
  std::vector<double> face(grid.n0() + 1);
  for (int i = 1; i < grid.n0(); ++i)
    face[i] = 0.5 * (sc.flux.h(u[i - 1]) + sc.flux.h(u[i]));
  face[0] = 0.5 * (sc.flux.h(0.0) + sc.flux.h(u[0]));
  face[grid.n0()] = 0.5 * (sc.flux.h(u[grid.n0() - 1]) + sc.flux.h(0.0));
  for (int i = 0; i < grid.n0(); ++i)
    v[i] = u[i] - dt / grid.dz0() * (face[i + 1] - face[i]);
  double worst = 0.0;
  for (double k : {-0.5, 0.0, 0.5})
    worst = std::max(worst, entropy_residual_cells(grid, sc.flux, u.values(),
                                                   v.values(), dt, 0.0, k));
  CHECK(worst > 1e-3);
}

TEST_CASE("shock exits the interval at speed one half") {
  const Scenario sc = shock_exit(200);
  const HyperbolicResult res = solve_hyperbolic(sc);
  const double err = oracles::l1_error(
      *res.grid, res.final_state,
      [](Point z, double t) {
        return oracles::burgers_interval_exact(oracles::BurgersCase::shock_exit,
                                               z.z0, t);
      },
      1.0);
  CHECK(err < 0.02);
  CHECK(res.max_entropy_residual <= 1e-12);
  for (const SeriesRecord& r : res.series) CHECK(r.linf <= 1.0 + 1e-12);
}

TEST_CASE("bln residual hand values") {
  const Scenario sc = shock_exit(100);
  const StructuredGrid grid = sc.make_grid();
  const auto right = grid.boundary_faces()[1];
  CHECK(bln_residual(sc.flux, grid.geometry(), 0.0, right, 0.0) == 0.0);
  CHECK(bln_residual(sc.flux, grid.geometry(), 1.0, right, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(bln_residual(sc.flux, grid.geometry(), -1.0, right, 0.0) ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("weak entropy residual of the shock run") {
  Scenario sc = shock_exit(200);
  sc.cadence = 0.05;
  sc.monitor_entropy = false;
  HyperbolicOptions opt;
  opt.store_trajectory = true;
  const HyperbolicResult run = solve_hyperbolic(sc, opt);
  const double worst = entropy_residual_weak(sc, run);
  CHECK(worst >= -5e-3);
}

TEST_CASE("L1 contraction of paired runs") {
  Scenario sc = shock_exit(100);
  sc.monitor_entropy = false;
  InitialSpec a;
  a.profile = InitialSpec::Profile::constant;
  a.value = 1.0;
  InitialSpec b = a;
  b.value = 0.5;
  const auto dist = l1_contraction_check(sc, a, b);
  CHECK(dist.front().second == doctest::Approx(0.5));
  for (std::size_t i = 1; i < dist.size(); ++i)
    CHECK(dist[i].second <= dist[i - 1].second + 1e-10);
  CHECK(dist.back().second < dist.front().second);  // mass leaves on the right

  const auto same = l1_contraction_check(sc, a, a);
  for (const auto& [t, d] : same) CHECK(d == 0.0);
}

TEST_CASE("smoothed sign diagnostics") {
  const double eta = 1e-3;
  CHECK(entropy_S_eta(0.0, eta) == doctest::Approx(0.5 * eta));
  CHECK(entropy_S_eta(2.0 * eta, eta) == doctest::Approx(2.0 * eta));
  CHECK(entropy_S_eta(-3.0, eta) == doctest::Approx(3.0));
  CHECK(entropy_s_eta(0.5 * eta, eta) == doctest::Approx(0.5));
  CHECK(entropy_s_eta(5.0, eta) == 1.0);
  CHECK(entropy_s_eta(-1.0, eta) == -1.0);
}
