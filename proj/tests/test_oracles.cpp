#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mclaw/oracles.hpp"

using namespace mclaw;
using namespace mclaw::oracles;
using std::numbers::pi;

TEST_CASE("tracer reproduces constant-speed transport on the interval") {
  const ChartGeometry line = ChartGeometry::weighted_interval(0.0, 1.0);
  const FluxFamily flux{.h_kind = HKind::linear, .a_value = 1.0};
  const CharacteristicTracer tracer(line, flux, 1e-3);
  auto u0 = [](Point z) { return std::sin(5.0 * z.z0); };
  for (double x : {0.15, 0.45, 0.85}) {
    const double t = 0.3;
    const double want = x > t ? u0({x - t, 0.0}) : 0.0;
    CHECK(tracer.solution(u0, {x, 0.0}, t) == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("tracer reproduces the band rotation") {
  const ChartGeometry band = ChartGeometry::spherical_band(pi / 4, pi / 2);
  const FluxFamily flux{.h_kind = HKind::linear, .a_value = 0.0, .c_value = 1.0};
  const CharacteristicTracer tracer(band, flux, 1e-3);
  auto u0 = [](Point z) { return std::cos(z.z0) * std::sin(2.0 * z.z1); };
  const Point x{pi / 3, 1.2};
  const double t = 2.5;
  const double want = u0({x.z0, x.z1 - t});
  CHECK(tracer.solution(u0, x, t) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("meridional exit time matches the arclength quadrature") {
  const ChartGeometry wavy = ChartGeometry::surface_of_revolution(0.0, 1.0, 0.3);
  const FluxFamily flux{.h_kind = HKind::linear, .a_value = 1.0};
  const CharacteristicTracer tracer(wavy, flux, 2e-4);
  // ds/dtau = 1/r(s): time from s_lo to s equals int r ds (Simpson)
  const double s_query = 0.7;
  const int m = 2000;
  double integral = 0.0;
  for (int i = 0; i < m; ++i) {
    const double a = s_query * i / m, b = s_query * (i + 1) / m;
    integral += (b - a) / 6.0 *
                (wavy.profile_r(a) + 4.0 * wavy.profile_r(0.5 * (a + b)) +
                 wavy.profile_r(b));
  }
  const double t = 1.5;  // backward path exits through s = 0
  const auto path = tracer.trace_back({s_query, 0.3}, t);
  REQUIRE(path.exited);
  CHECK(path.exit_time == doctest::Approx(t - integral).epsilon(1e-7));
}

TEST_CASE("forward then backward tracing returns the start") {
  const ChartGeometry wavy = ChartGeometry::surface_of_revolution(0.0, 1.0, 0.3);
  const FluxFamily flux{.h_kind = HKind::linear, .a_value = 0.3, .c_value = 0.8};
  const CharacteristicTracer tracer(wavy, flux, 1e-3);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d01(0.2, 0.6);
  for (int it = 0; it < 20; ++it) {
    const Point z0{d01(rng), d01(rng) * 2.0};
    const double t1 = 0.4;
    const Point z1 = tracer.trace_forward(z0, 0.0, t1);
    const auto back = tracer.trace_back(z1, t1);
    REQUIRE(!back.exited);
    CHECK(back.end.z0 == doctest::Approx(z0.z0).epsilon(1e-8));
    CHECK(std::remainder(back.end.z1 - z0.z1, 2.0 * pi) ==
          doctest::Approx(0.0).epsilon(1e-8));
  }
}

TEST_CASE("burgers closed forms") {
  // fan state behind the exited shock
  CHECK(burgers_interval_exact(BurgersCase::shock_exit, 0.3, 1.0) ==
        doctest::Approx(0.3));
  CHECK(burgers_interval_exact(BurgersCase::shock_exit, 0.95, 0.2) == 0.0);
  CHECK(burgers_interval_exact(BurgersCase::shock_exit, 0.85, 0.2) == 1.0);
  CHECK(burgers_interval_exact(BurgersCase::shock_exit, 0.1, 0.2) ==
        doctest::Approx(0.5));
  CHECK(burgers_interval_exact(BurgersCase::shock_exit, 0.7, 2.5) ==
        doctest::Approx(0.28));
  CHECK(burgers_interval_exact(BurgersCase::boundary_rarefaction, 0.9, 0.5) ==
        doctest::Approx(-0.2));
  CHECK_THROWS_AS(
      (void)burgers_interval_exact(BurgersCase::boundary_rarefaction, 0.5, 1.5),
      std::domain_error);
}

TEST_CASE("closed forms satisfy the conservation law pointwise") {
  // finite differences away from the shock and the fan kinks
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> dx(0.05, 0.95), dt(0.2, 0.9);
  const double h = 1e-5;
  int checked = 0;
  for (int it = 0; it < 1000; ++it) {
    const double x = dx(rng), t = dt(rng);
    // shock-exit: skip bands around the shock (t < 0.4), the fan head x = t
    // and the fan foot x = 0
    const bool near_shock = t < 0.41 && std::fabs(x - (0.8 + 0.5 * t)) < 6.0 * h;
    if (!near_shock && std::fabs(x - t) > 6.0 * h && x > 6.0 * h) {
      auto u = [&](double xx, double tt) {
        return burgers_interval_exact(BurgersCase::shock_exit, xx, tt);
      };
      const double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
      const double fx =
          (0.5 * u(x + h, t) * u(x + h, t) - 0.5 * u(x - h, t) * u(x - h, t)) /
          (2.0 * h);
      CHECK(std::fabs(ut + fx) < 1e-5 * (1.0 + std::fabs(ut) + std::fabs(fx)));
      ++checked;
    }
    // rarefaction: skip the kinks x = 1 - t and the boundary
    if (t < 0.95 && std::fabs(x - (1.0 - t)) > 6.0 * h && x < 1.0 - 6.0 * h) {
      auto u = [&](double xx, double tt) {
        return burgers_interval_exact(BurgersCase::boundary_rarefaction, xx,
                                      tt);
      };
      const double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
      const double fx =
          (0.5 * u(x + h, t) * u(x + h, t) - 0.5 * u(x - h, t) * u(x - h, t)) /
          (2.0 * h);
      CHECK(std::fabs(ut + fx) < 1e-5 * (1.0 + std::fabs(ut) + std::fabs(fx)));
    }
  }
  CHECK(checked > 700);
  // Rankine-Hugoniot: while inside, the 1|0 jump sits at x = 0.8 + t/2
  for (double t : {0.1, 0.2, 0.3}) {
    CHECK(burgers_interval_exact(BurgersCase::shock_exit,
                                 0.8 + 0.5 * t - 1e-9, t) == 1.0);
    CHECK(burgers_interval_exact(BurgersCase::shock_exit,
                                 0.8 + 0.5 * t + 1e-9, t) == 0.0);
  }
}

TEST_CASE("l1 error basics") {
  const ChartGeometry line = ChartGeometry::weighted_interval(0.0, 1.0);
  const StructuredGrid grid(line, 64);
  auto oracle = [](Point z, double) { return std::sin(3.0 * z.z0); };
  CellField f(grid);
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    f[c] = oracle(grid.cell_center(c), 0.0);
  CHECK(l1_error(grid, f, oracle, 0.0) == 0.0);
  for (auto& v : f.values()) v += 0.25;
  CHECK(l1_error(grid, f, oracle, 0.0) ==
        doctest::Approx(0.25 * grid.total_volume()).epsilon(1e-12));
}

TEST_CASE("degenerate viscosity list") {
  Scenario sc;
  sc.geom = ChartGeometry::weighted_interval(0.0, 1.0);
  sc.flux = FluxFamily{.h_kind = HKind::burgers, .a_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::constant;
  sc.initial.value = 1.0;
  sc.resolution = {32};
  sc.horizon = 0.2;
  sc.cadence = 0.1;
  sc.monitor_entropy = false;
  const auto rows = oracles::viscosity_limit_study(sc, {0.0});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].l1_distance == 0.0);
}
