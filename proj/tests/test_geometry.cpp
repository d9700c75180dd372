#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <random>

#include "mclaw/geometry.hpp"

using namespace mclaw;
using std::numbers::pi;

namespace {
const ChartGeometry euclid = ChartGeometry::weighted_interval(0.0, 1.0);
const ChartGeometry weighted = ChartGeometry::weighted_interval(0.0, 1.0, 1.0);
const ChartGeometry band = ChartGeometry::spherical_band(pi / 4, pi / 2);
const ChartGeometry cylinder = ChartGeometry::surface_of_revolution(0.0, 1.0);
const ChartGeometry wavy = ChartGeometry::surface_of_revolution(0.0, 1.0, 0.3);
}  // namespace

TEST_CASE("metric samples of the built-in kinds") {
  const MetricSample e = euclid.metric_at({0.37, 0.0});
  CHECK(e.g[0][0] == 1.0);
  CHECK(e.christoffel[0][0][0] == 0.0);
  CHECK(e.ricci[0][0] == 0.0);

  const MetricSample b = band.metric_at({pi / 2, 1.0});
  CHECK(b.g[0][0] == doctest::Approx(1.0));
  CHECK(b.g[1][1] == doctest::Approx(1.0));
  CHECK(b.sqrt_det == doctest::Approx(1.0));

  const MetricSample c = cylinder.metric_at({0.5, 2.0});
  CHECK(c.ricci[0][0] == doctest::Approx(0.0));
  CHECK(c.ricci[1][1] == doctest::Approx(0.0));

  CHECK_THROWS_AS((void)band.metric_at({0.1, 0.0}), std::domain_error);
}

TEST_CASE("inner products") {
  CHECK(band.inner_product_at({pi / 3, 0.0}, Vec2{0, 1}, Vec2{0, 1}) ==
        doctest::Approx(0.75));
  CHECK(band.inner_product_at({pi / 3, 0.0}, Vec2{0, 0}, Vec2{0, 1}) == 0.0);
  // w(1) = 2 so g = 4
  CHECK(weighted.inner_product_at({1.0, 0.0}, Vec2{1, 0}, Vec2{1, 0}) ==
        doctest::Approx(4.0));
  const double one[1] = {1.0};
  const double two[2] = {1.0, 0.0};
  CHECK_THROWS_AS(
      (void)weighted.inner_product_at({0.5, 0.0}, std::span<const double>(two),
                                      std::span<const double>(one)),
      std::invalid_argument);
}

TEST_CASE("unit outer normals") {
  const Vec2 top = band.unit_outer_normal({pi / 2, 0.3});
  CHECK(top[0] == doctest::Approx(1.0));
  CHECK(top[1] == 0.0);
  const Vec2 bot = band.unit_outer_normal({pi / 4, 0.3});
  CHECK(bot[0] == doctest::Approx(-1.0));
  // w(1) = 2: N = 0.5 so |N|_g = 1
  const Vec2 r = weighted.unit_outer_normal({1.0, 0.0});
  CHECK(r[0] == doctest::Approx(0.5));
  CHECK(weighted.norm_g({1.0, 0.0}, r) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS((void)band.unit_outer_normal({1.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("divergence of analytic fields") {
  auto constant = [](Point) -> Vec2 { return {0.8, 0.0}; };
  CHECK(euclid.div_at(constant, {0.5, 0.0}).value ==
        doctest::Approx(0.0).epsilon(1e-10));

  // divergence-free by construction: (a/sin th, c(th))
  auto divfree = [](Point z) -> Vec2 {
    return {0.7 / std::sin(z.z0), std::cos(z.z0)};
  };
  CHECK(std::fabs(band.div_at(divfree, {pi / 3, 1.0}).value) < 1e-6);

  // (1,0) on the band: div = cot(theta)
  auto radial = [](Point) -> Vec2 { return {1.0, 0.0}; };
  CHECK(band.div_at(radial, {pi / 3, 0.5}).value ==
        doctest::Approx(1.0 / std::tan(pi / 3)).epsilon(1e-6));

  // near the boundary the stencil falls back one-sided and says so
  const DivResult near = band.div_at(radial, {pi / 2 - 1e-5, 0.5});
  CHECK(near.one_sided);
  CHECK(near.value == doctest::Approx(1.0 / std::tan(pi / 2 - 1e-5)).epsilon(1e-4));
}

TEST_CASE("laplace of analytic fields") {
  auto constant = [](Point) { return 3.0; };
  CHECK(euclid.laplace_at(constant, {0.4, 0.0}).value ==
        doctest::Approx(0.0).epsilon(1e-9));
  auto xsq = [](Point z) { return z.z0 * z.z0; };
  CHECK(euclid.laplace_at(xsq, {0.37, 0.0}).value ==
        doctest::Approx(2.0).epsilon(1e-8));
  auto costh = [](Point z) { return std::cos(z.z0); };
  const ChartGeometry wide = ChartGeometry::spherical_band(pi / 6, pi / 2);
  CHECK(wide.laplace_at(costh, {pi / 4, 0.0}).value ==
        doctest::Approx(-2.0 * std::cos(pi / 4)).epsilon(1e-6));
}

TEST_CASE("observed order of div/laplace is at least 1.7") {
  auto radial = [](Point) -> Vec2 { return {1.0, 0.0}; };
  auto costh = [](Point z) { return std::cos(z.z0); };
  const Point z{pi / 3, 0.7};
  const double div_exact = 1.0 / std::tan(pi / 3);
  const double lap_exact = -2.0 * std::cos(pi / 3);
  double e_div[3], e_lap[3];
  const double steps[3] = {4e-3, 2e-3, 1e-3};
  for (int k = 0; k < 3; ++k) {
    e_div[k] = std::fabs(band.div_at(radial, z, steps[k]).value - div_exact);
    e_lap[k] = std::fabs(band.laplace_at(costh, z, steps[k]).value - lap_exact);
  }
  CHECK(std::log2(e_div[0] / e_div[1]) >= 1.7);
  CHECK(std::log2(e_div[1] / e_div[2]) >= 1.7);
  CHECK(std::log2(e_lap[0] / e_lap[1]) >= 1.7);
  CHECK(std::log2(e_lap[1] / e_lap[2]) >= 1.7);
}

TEST_CASE("commutator identity") {
  auto smooth = [](Point z) { return std::sin(2.0 * z.z0) + z.z0 * z.z0; };
  CHECK(euclid.commutator_residual_at(smooth, {0.43, 0.0}) <= 1e-12);

  auto sins = [](Point z) { return std::sin(z.z0); };
  CHECK(cylinder.commutator_residual_at(sins, {0.43, 1.2}) <= 1e-12);

  // band: residual halves (at least) per fd_step halving
  auto costh = [](Point z) { return std::cos(z.z0); };
  const Point z{pi / 3, 0.9};
  const double r1 = band.commutator_residual_at(costh, z, 1e-2);
  const double r2 = band.commutator_residual_at(costh, z, 5e-3);
  const double r3 = band.commutator_residual_at(costh, z, 2.5e-3);
  CHECK(r2 <= 0.5 * r1 + 1e-14);
  CHECK(r3 <= 0.5 * r2 + 1e-14);
}

TEST_CASE("metric is SPD and inverse is exact at random points") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const ChartGeometry* geoms[] = {&weighted, &band, &wavy};
  for (const ChartGeometry* g : geoms) {
    for (int it = 0; it < 3000; ++it) {
      const Point z{g->lo(0) + u01(rng) * g->extent(0), u01(rng) * 2.0 * pi};
      const MetricSample m = g->metric_at(z);
      // residual of g * g_inv against the identity
      for (int i = 0; i < m.dim; ++i)
        for (int j = 0; j < m.dim; ++j) {
          double acc = 0.0;
          for (int k = 0; k < m.dim; ++k) acc += m.g[i][k] * m.g_inv[k][j];
          CHECK(std::fabs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
        }
      // smallest eigenvalue of a diagonal SPD matrix
      double mineig = m.g[0][0];
      if (m.dim == 2) mineig = std::min(mineig, m.g[1][1]);
      CHECK(mineig > 0.0);
      CHECK(m.sqrt_det > 0.0);
      // Christoffel symmetry in the lower indices
      for (int k = 0; k < m.dim; ++k)
        for (int i = 0; i < m.dim; ++i)
          for (int j = 0; j < m.dim; ++j)
            CHECK(m.christoffel[k][i][j] == m.christoffel[k][j][i]);
    }
  }
}

TEST_CASE("curvature of the revolution profile") {
  // K = -r''/r, Ric = K g
  const Point z{0.31, 0.0};
  const double r = wavy.profile_r(z.z0);
  const double k = wavy.gauss_curvature(z);
  CHECK(k == doctest::Approx(-wavy.profile_ddr(z.z0) / r));
  const MetricSample m = wavy.metric_at(z);
  CHECK(m.ricci[0][0] == doctest::Approx(k * m.g[0][0]));
  CHECK(m.ricci[1][1] == doctest::Approx(k * m.g[1][1]));
}

TEST_CASE("distance to boundary") {
  CHECK(band.dist_to_boundary({pi / 4 + 0.1, 0.0}) == doctest::Approx(0.1));
  // weighted interval: arclength integral of w
  const double d = weighted.dist_to_boundary({0.1, 0.0});
  CHECK(d == doctest::Approx(0.1 + 0.5 * 0.01));
}
