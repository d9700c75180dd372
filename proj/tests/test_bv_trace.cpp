#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <random>

#include "mclaw/bv_trace.hpp"
#include "mclaw/kernels.hpp"

using namespace mclaw;
using std::numbers::pi;

namespace {
const ChartGeometry euclid = ChartGeometry::weighted_interval(0.0, 1.0);
const ChartGeometry band_geom = ChartGeometry::spherical_band(pi / 4, pi / 2);

CellField step_field(const StructuredGrid& grid, double at = 0.5) {
  CellField f(grid);
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    f[c] = grid.cell_center(c).z0 > at ? 1.0 : 0.0;
  return f;
}
}  // namespace

TEST_CASE("total variation of flat and curved profiles") {
  const StructuredGrid line(euclid, 64);
  const bv::TVReport zero = bv::total_variation(line, CellField(line, 3.0));
  CHECK(zero.tv_gradient == 0.0);
  CHECK(zero.tv_jump == 0.0);

  // unit step at an interior face: single face jump times measure one
  const bv::TVReport st = bv::total_variation(line, step_field(line));
  CHECK(st.tv_jump == doctest::Approx(1.0).epsilon(1e-14));

  // band, u = cos(theta): integral of sin^2 over the band
  const StructuredGrid band(band_geom, 64, 128);
  const CellField u = sample_field(band, [](Point z) { return std::cos(z.z0); });
  const double expect = 2.0 * pi * (pi / 8.0 + 0.25);
  CHECK(bv::total_variation(band, u).tv_gradient ==
        doctest::Approx(expect).epsilon(0.01));
}

TEST_CASE("trace extraction basics") {
  const StructuredGrid band(band_geom, 32, 64);
  const bv::TraceField tc = bv::extract_trace(band, CellField(band, 2.5));
  for (double v : tc.values) CHECK(v == doctest::Approx(2.5).epsilon(1e-14));

  // boundary values of a continuous field
  const CellField u = sample_field(band, [](Point z) { return std::cos(z.z0); });
  const bv::TraceField tu = bv::extract_trace(band, u);
  for (std::size_t k = 0; k < tu.values.size(); ++k) {
    const auto& bf = band.boundary_faces()[k];
    // theta0 is where cos peaks, so the exported (clamped) value sits at
    // the cell sup, one quarter cell inside; the raw extrapolant is O(h^2)
    if (bf.side == 0) {
      CHECK(tu.extrapolated[k] ==
            doctest::Approx(std::cos(pi / 4)).epsilon(2e-3));
      CHECK(tu.values[k] ==
            doctest::Approx(std::cos(pi / 4)).epsilon(2e-2));
    } else {
      CHECK(std::fabs(tu.values[k] - std::cos(pi / 2)) < 1e-3);
    }
  }

  // a jump buried deeper than 8h leaves the trace untouched
  const StructuredGrid line(euclid, 100);
  const bv::TraceField ts = bv::extract_trace(line, step_field(line));
  CHECK(ts.values[0] == doctest::Approx(0.0));
  CHECK(ts.values[1] == doctest::Approx(1.0));

  const StructuredGrid coarse(euclid, 8);
  CHECK_THROWS_AS((void)bv::extract_trace(coarse, CellField(coarse, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("trace is bounded by the sup norm for arbitrary fields") {
  const StructuredGrid band(band_geom, 24, 32);
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    CellField f(band);
    for (auto& v : f.values()) v = d(rng);
    const double sup = kernels::max_abs(f.values());
    for (double tv : bv::extract_trace(band, f).values)
      CHECK(std::fabs(tv) <= sup + 1e-15);
  }
}

TEST_CASE("trace extraction is linear off the clamp") {
  const StructuredGrid band(band_geom, 32, 48);
  const double len = pi / 2 - pi / 4;
  const CellField u = sample_field(band, [&](Point z) {
    return std::sin(pi * (z.z0 - pi / 4) / len) * (1.0 + 0.3 * std::sin(z.z1));
  });
  const CellField v = sample_field(band, [&](Point z) {
    return std::sin(2.0 * pi * (z.z0 - pi / 4) / len) + 0.1 * std::cos(z.z1);
  });
  CellField combo(band);
  kernels::lincomb2(combo.values(), 0.6, u.values(), -1.7, v.values());
  const auto tu = bv::extract_trace(band, u).values;
  const auto tv = bv::extract_trace(band, v).values;
  const auto tc = bv::extract_trace(band, combo).values;
  for (std::size_t k = 0; k < tc.size(); ++k)
    CHECK(tc[k] == doctest::Approx(0.6 * tu[k] - 1.7 * tv[k]).epsilon(1e-12));
}

TEST_CASE("smooth surrogate has unit directions") {
  const StructuredGrid band(band_geom, 24, 32);
  const CellField u = sample_field(
      band, [](Point z) { return std::cos(z.z0) + 0.2 * std::sin(z.z1); });
  const bv::SmoothBVSurrogate s = bv::build_smooth_surrogate(band, u);
  for (std::size_t c = 0; c < band.cell_count(); ++c) {
    if (s.density[c] == 0.0) continue;
    const double norm = band.geometry().norm_g(
        band.cell_center(c), Vec2{s.sigma0[c], s.sigma1[c]});
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("trace formula residual") {
  const StructuredGrid band(band_geom, 32, 64);
  const CellField u = sample_field(band, [](Point z) { return std::cos(z.z0); });

  auto zero_field = [](Point) -> Vec2 { return {0.0, 0.0}; };
  CHECK(bv::trace_formula_residual(band, u, zero_field,
                                   bv::SurrogateKind::smooth_field) == 0.0);

  // smooth case refines at second order
  auto radial = [](Point) -> Vec2 { return {1.0, 0.0}; };
  const double r1 = bv::trace_formula_residual(band, u, radial,
                                               bv::SurrogateKind::smooth_field);
  const StructuredGrid fine(band_geom, 64, 128);
  const CellField uf =
      sample_field(fine, [](Point z) { return std::cos(z.z0); });
  const double r2 = bv::trace_formula_residual(fine, uf, radial,
                                               bv::SurrogateKind::smooth_field);
  CHECK(std::log2(r1 / r2) >= 1.5);

  // hand-checked 1D piecewise-constant case: all three terms cancel
  const StructuredGrid line(euclid, 100);
  auto ones = [](Point) -> Vec2 { return {1.0, 0.0}; };
  const double rs = bv::trace_formula_residual(
      line, step_field(line), ones, bv::SurrogateKind::piecewise_constant);
  CHECK(rs <= 0.02);
}

TEST_CASE("cutoff pairing approaches the boundary integral") {
  const StructuredGrid band(band_geom, 64, 128);
  auto tangential = [](Point) -> Vec2 { return {0.0, 0.7}; };
  CHECK(bv::cutoff_pairing(band, CellField(band, 0.0), tangential, 0.05) == 0.0);
  CHECK(std::fabs(bv::cutoff_pairing(band, CellField(band, 1.0), tangential,
                                     0.05)) < 1e-10);

  // outward transverse unit field with plateaus near both circles
  auto outward = [](Point z) -> Vec2 {
    const double t0 = pi / 4, t1 = pi / 2;
    const double a = (z.z0 - t0) / (t1 - t0);
    const double s = 2.0 * smoothstep_quintic(a) - 1.0;  // +1 at t0, -1 at t1
    return {-s, 0.0};
  };
  const double expect = 2.0 * pi * (std::sin(pi / 4) + std::sin(pi / 2));
  const double got =
      bv::cutoff_pairing(band, CellField(band, 1.0), outward, 0.05);
  CHECK(got == doctest::Approx(expect).epsilon(0.02));

  CHECK_THROWS_AS(
      (void)bv::cutoff_pairing(band, CellField(band, 1.0), outward, 0.3),
      std::invalid_argument);
}

TEST_CASE("trace composition") {
  const StructuredGrid band(band_geom, 32, 64);
  const CellField u = sample_field(band, [](Point z) { return std::cos(z.z0); });
  CHECK(bv::compose_trace_check(band, u, [](double z) { return z; }) == 0.0);
  CHECK(bv::compose_trace_check(band, CellField(band, 1.3),
                                [](double z) { return z * z; }) ==
        doctest::Approx(0.0).epsilon(1e-14));
  const double c1 =
      bv::compose_trace_check(band, u, [](double z) { return z * z; });
  CHECK(c1 <= 0.05);
  const StructuredGrid fine(band_geom, 64, 128);
  const CellField uf =
      sample_field(fine, [](Point z) { return std::cos(z.z0); });
  const double c2 =
      bv::compose_trace_check(fine, uf, [](double z) { return z * z; });
  CHECK(c2 <= 0.6 * c1 + 1e-12);
}

TEST_CASE("flux pairing with the cutoff gradient") {
  const StructuredGrid line(euclid, 100);
  auto transport = [](double uv, Point, double) -> Vec2 {
    return {uv, 0.0};
  };
  const CellField zero(line, 0.0);
  const CellField phi1(line, 1.0);
  const auto both0 = bv::flux_trace_pairing(line, zero, transport, 0.0, phi1, 0.06);
  CHECK(both0.first == 0.0);
  CHECK(both0.second == 0.0);

  // u == 1: boundary contributions cancel (+1 at x=1, -1 at x=0) and the
  // volume side follows as delta shrinks
  const CellField one(line, 1.0);
  const auto p1 = bv::flux_trace_pairing(line, one, transport, 0.0, phi1, 0.08);
  const auto p2 = bv::flux_trace_pairing(line, one, transport, 0.0, phi1, 0.05);
  CHECK(p1.second == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::fabs(p2.first - p2.second) <= std::fabs(p1.first - p1.second) + 1e-12);

  // purely tangential flux on the band: boundary side vanishes
  const StructuredGrid band(band_geom, 48, 64);
  auto tangential = [](double uv, Point, double) -> Vec2 {
    return {0.0, uv};
  };
  const CellField ub = sample_field(band, [](Point z) { return std::cos(z.z0); });
  const auto pt = bv::flux_trace_pairing(band, ub, tangential, 0.0,
                                         CellField(band, 1.0), 0.06);
  CHECK(pt.second == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::fabs(pt.first) < 0.05);
}

TEST_CASE("composed fields stay BV") {
  const StructuredGrid line(euclid, 100);
  const CellField st = step_field(line);
  const double base = bv::total_variation(line, st).tv_jump;
  CHECK(bv::composed_tv_bounded(line, st, [](double u, Point) { return u; }) ==
        doctest::Approx(base));
  CHECK(bv::composed_tv_bounded(line, st, [](double, Point) { return 4.2; }) ==
        0.0);
  CHECK(bv::composed_tv_bounded(
            line, st, [](double u, Point) { return 0.5 * u * u; }) ==
        doctest::Approx(0.5).epsilon(1e-14));
  // bound L_F tv(u) + C_F vol(M) for F = u*(1+x)/2
  auto f = [](double u, Point z) { return 0.5 * u * (1.0 + z.z0); };
  const double lf = 1.0, cf = 0.5;  // sup|dF/du|, sup|grad_x F|
  CHECK(bv::composed_tv_bounded(line, st, f) <=
        lf * base + cf * line.total_volume() + 1e-12);
}

TEST_CASE("jump TV is lower semicontinuous under smoothing") {
  const StructuredGrid line(euclid, 200);
  const CellField st = step_field(line);
  const double base = bv::total_variation(line, st).tv_jump;
  // moving-average smoothing keeps the profile monotone
  for (int width : {2, 4, 8, 16}) {
    CellField sm(line);
    for (int i = 0; i < line.n0(); ++i) {
      double acc = 0.0;
      int cnt = 0;
      for (int k = -width; k <= width; ++k) {
        const int j = std::clamp(i + k, 0, line.n0() - 1);
        acc += st[j];
        ++cnt;
      }
      sm[i] = acc / cnt;
    }
    CHECK(bv::total_variation(line, sm).tv_jump >= base - 1e-12);
  }
}
