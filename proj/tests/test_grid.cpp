#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <random>
#include <sstream>

#include "mclaw/grid.hpp"
#include "mclaw/kernels.hpp"

using namespace mclaw;
using std::numbers::pi;

namespace {
const ChartGeometry euclid = ChartGeometry::weighted_interval(0.0, 1.0);
const ChartGeometry weighted = ChartGeometry::weighted_interval(0.0, 1.0, 1.0);
const ChartGeometry band_geom = ChartGeometry::spherical_band(pi / 4, pi / 2);
const double kBandVolume = pi * std::sqrt(2.0);  // 2*pi*(cos(pi/4)-cos(pi/2))
}  // namespace

TEST_CASE("cell volumes approximate vol_g(M)") {
  const StructuredGrid band(band_geom, 64, 128);
  CHECK(kernels::sum(band.cell_volumes()) ==
        doctest::Approx(kBandVolume).epsilon(0.01));

  const StructuredGrid line(euclid, 10);
  CHECK(kernels::sum(line.cell_volumes()) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const StructuredGrid wline(weighted, 100);
  CHECK(kernels::sum(wline.cell_volumes()) ==
        doctest::Approx(1.5).epsilon(1e-4));

  CHECK_THROWS_AS(StructuredGrid(euclid, 3), std::invalid_argument);
}

TEST_CASE("volume converges at order >= 1.9") {
  double err[3];
  const int levels[3] = {16, 32, 64};
  for (int k = 0; k < 3; ++k) {
    const StructuredGrid g(band_geom, levels[k], 2 * levels[k]);
    err[k] = std::fabs(g.total_volume() - kBandVolume);
  }
  CHECK(std::log2(err[0] / err[1]) >= 1.9);
  CHECK(std::log2(err[1] / err[2]) >= 1.9);
}

TEST_CASE("integrate") {
  const StructuredGrid band(band_geom, 64, 128);
  CHECK(integrate(band, CellField(band, 0.0)) == 0.0);
  CHECK(integrate(band, CellField(band, 1.0)) ==
        doctest::Approx(kBandVolume).epsilon(0.01));
  const StructuredGrid line(euclid, 16);
  CHECK(integrate(line, CellField(line, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const StructuredGrid other(euclid, 8);
  CHECK_THROWS_AS((void)integrate(line, CellField(other, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("boundary measures and integration") {
  const StructuredGrid band(band_geom, 64, 128);
  // circle theta = pi/2 has circumference 2*pi in the induced metric
  std::vector<double> v(band.boundary_faces().size(), 0.0);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (band.boundary_faces()[k].side == 1) v[k] = 1.0;
  CHECK(boundary_integrate(band, v) ==
        doctest::Approx(2.0 * pi).epsilon(0.01));
  std::fill(v.begin(), v.end(), 0.0);
  CHECK(boundary_integrate(band, v) == 0.0);

  // 1D: two endpoint faces of measure one
  const StructuredGrid line(weighted, 16);
  REQUIRE(line.boundary_faces().size() == 2);
  CHECK(boundary_integrate(line, std::vector<double>{2.0, 3.0}) ==
        doctest::Approx(5.0));

  // every boundary normal is unit in g
  for (const auto& bf : band.boundary_faces())
    CHECK(band_geom.norm_g(bf.center, bf.normal) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("discrete gradient") {
  const StructuredGrid line(euclid, 32);
  const CellField c(line, 4.0);
  const GradientField gc = discrete_gradient(line, c);
  for (double v : gc.comp0) CHECK(v == 0.0);

  CellField ux(line);
  for (int i = 0; i < line.n0(); ++i) ux[i] = line.center0(i);
  const GradientField gx = discrete_gradient(line, ux);
  for (int i = 0; i < line.n0(); ++i)
    CHECK(gx.comp0[i] == doctest::Approx(1.0).epsilon(1e-12));

  // band, u = phi (unwrapped): (grad u)^phi = 1/sin^2(theta) off the seam
  const StructuredGrid band(band_geom, 16, 64);
  CellField uphi(band);
  for (int i = 0; i < band.n0(); ++i)
    for (int j = 0; j < band.n1(); ++j)
      uphi[band.index(i, j)] = band.center1(j);
  const GradientField gphi = discrete_gradient(band, uphi);
  for (int i = 0; i < band.n0(); ++i) {
    const double s = std::sin(band.center0(i));
    for (int j = 2; j < band.n1() - 2; ++j)
      CHECK(gphi.comp1[band.index(i, j)] ==
            doctest::Approx(1.0 / (s * s)).epsilon(1e-10));
  }
}

TEST_CASE("discrete laplace: Dirichlet eigenfunction") {
  const StructuredGrid line(euclid, 64);
  const CellField zero(line);
  const CellField lap0 = discrete_laplace(line, zero, BoundaryMode::dirichlet_zero);
  for (double v : lap0.values()) CHECK(v == 0.0);

  CellField u(line);
  for (int i = 0; i < line.n0(); ++i) u[i] = std::sin(pi * line.center0(i));
  const CellField lap = discrete_laplace(line, u, BoundaryMode::dirichlet_zero);
  const double h = line.dz0();
  const double mu = (2.0 - 2.0 * std::cos(pi * h)) / (h * h);
  for (int i = 0; i < line.n0(); ++i) {
    // sin(pi x) is the exact eigenvector of the odd-reflection stencil
    CHECK(lap[i] == doctest::Approx(-mu * u[i]).epsilon(1e-10));
    CHECK(lap[i] == doctest::Approx(-pi * pi * u[i]).epsilon(5e-3));
  }
}

TEST_CASE("discrete laplace agrees with the pointwise operator") {
  const StructuredGrid band(band_geom, 64, 128);
  auto sampler = [](Point z) { return std::cos(z.z0) - std::cos(pi / 2); };
  const CellField u = sample_field(band, sampler);
  const CellField lap = discrete_laplace(band, u, BoundaryMode::dirichlet_zero);
  // compare in the interior, away from the Dirichlet ghost rows
  for (int i0 : {16, 32, 47}) {
    const std::size_t c = band.index(i0, 5);
    const double want =
        band_geom.laplace_at(sampler, band.cell_center(c)).value;
    CHECK(lap[c] == doctest::Approx(want).epsilon(2e-3));
  }
}

TEST_CASE("cutoff field") {
  const StructuredGrid line(euclid, 100);
  const double delta = 0.02;
  const CutoffField r = build_cutoff(line, delta);
  // dist 0.005 <= delta/2 -> 1 ; dist 0.015 = 0.75*delta -> exactly 1/2 ;
  // dist 0.025 >= delta -> 0
  CHECK(r.values[0] == 1.0);
  CHECK(r.values[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.values[2] == 0.0);
  // monotone in distance, range [0,1]
  const auto dist = line.dist_to_boundary();
  for (std::size_t a = 0; a < line.cell_count(); ++a) {
    CHECK(r.values[a] >= 0.0);
    CHECK(r.values[a] <= 1.0);
    for (std::size_t b = 0; b < line.cell_count(); ++b)
      if (dist[a] < dist[b]) CHECK(r.values[a] >= r.values[b]);
  }
  CHECK_THROWS_AS((void)build_cutoff(line, 0.9), std::invalid_argument);
}

TEST_CASE("lebesgue averages") {
  const StructuredGrid line(euclid, 100);
  CHECK(lebesgue_average(line, CellField(line, 7.5), {0.31, 0.0}, 0.05) ==
        doctest::Approx(7.5));

  CellField ux(line);
  for (int i = 0; i < line.n0(); ++i) ux[i] = line.center0(i);
  CHECK(lebesgue_average(line, ux, {0.5, 0.0}, 0.21) ==
        doctest::Approx(0.5).epsilon(1e-12));

  CellField step(line);
  for (int i = 0; i < line.n0(); ++i) step[i] = line.center0(i) > 0.5 ? 1.0 : 0.0;
  CHECK(lebesgue_average(line, step, {0.5, 0.0}, 0.1) ==
        doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS((void)lebesgue_average(line, ux, {0.5, 0.0}, 1e-4),
                  std::invalid_argument);
}

TEST_CASE("discrete divergence theorem telescopes exactly") {
  const StructuredGrid band(band_geom, 24, 48);
  const int n0 = band.n0(), n1 = band.n1();
  auto xfield = [](Point z) -> Vec2 {
    return {std::sin(z.z0) + 0.2 * std::cos(z.z1), std::cos(3.0 * z.z1)};
  };
  // face fluxes sqrt|g| X^axis * transverse width
  std::vector<double> f0(static_cast<std::size_t>(n0 + 1) * n1);
  for (int i0f = 0; i0f <= n0; ++i0f)
    for (int j = 0; j < n1; ++j) {
      const Point zc{band.face0_coord(i0f), band.center1(j)};
      f0[band.index(std::min(i0f, n0 - 1), j) + (i0f == n0 ? n1 : 0)] = 0.0;
      f0[static_cast<std::size_t>(i0f) * n1 + j] =
          band.face0_sqrtg()[static_cast<std::size_t>(i0f) * n1 + j] *
          xfield(zc)[0] * band.dz1();
    }
  double net_total = 0.0;
  std::vector<double> net(band.cell_count(), 0.0);
  for (int i0 = 0; i0 < n0; ++i0)
    for (int j = 0; j < n1; ++j) {
      const std::size_t c = band.index(i0, j);
      const double fup = f0[static_cast<std::size_t>(i0 + 1) * n1 + j];
      const double fdn = f0[static_cast<std::size_t>(i0) * n1 + j];
      // periodic azimuthal faces
      const double phi_l = band.center1(j) - 0.5 * band.dz1();
      const double phi_r = band.center1(j) + 0.5 * band.dz1();
      const double s = band.face1_sqrtg_row()[i0];
      const double fr = s * xfield({band.center0(i0), phi_r})[1] * band.dz0();
      const double fl = s * xfield({band.center0(i0), phi_l})[1] * band.dz0();
      net[c] = (fup - fdn) + (fr - fl);
      net_total += net[c];
    }
  double boundary_total = 0.0;
  for (const auto& bf : band.boundary_faces()) {
    const std::size_t f =
        static_cast<std::size_t>(bf.side == 0 ? 0 : n0) * n1 + bf.j;
    boundary_total += (bf.side == 0 ? -1.0 : 1.0) * f0[f];
  }
  CHECK(net_total == doctest::Approx(boundary_total).epsilon(1e-12));
}

TEST_CASE("csv round trip is exact") {
  const StructuredGrid band(band_geom, 8, 8);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  CellField f(band);
  for (auto& v : f.values()) v = d(rng);
  std::stringstream ss;
  write_field_csv(ss, f);
  const CellField g = read_field_csv(ss, band);
  for (std::size_t c = 0; c < band.cell_count(); ++c) CHECK(f[c] == g[c]);
}
