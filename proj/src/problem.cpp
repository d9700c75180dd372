#include "mclaw/problem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "mclaw/kernels.hpp"

namespace mclaw {

double FluxFamily::sup_dh(double lo, double hi) const {
  if (h_kind == HKind::linear) return 1.0;
  return std::max(std::fabs(lo), std::fabs(hi));
}

double FluxFamily::a(double t) const {
  if (a_kind == AKind::constant) return a_value;
  return a_value * std::sin(2.0 * std::numbers::pi * t / a_period);
}

Vec2 flux_eval(const FluxFamily& f, const ChartGeometry& geom, double u,
               Point z, double t) {
  const double sd = geom.metric_at(z).sqrt_det;
  const double hu = f.h(u);
  Vec2 out{hu * f.a(t) / sd, 0.0};
  if (geom.dim() == 2) out[1] = hu * f.c(z.z0);
  return out;
}

Vec2 dflux_eval(const FluxFamily& f, const ChartGeometry& geom, double u,
                Point z, double t) {
  const double sd = geom.metric_at(z).sqrt_det;
  const double dhu = f.dh(u);
  Vec2 out{dhu * f.a(t) / sd, 0.0};
  if (geom.dim() == 2) out[1] = dhu * f.c(z.z0);
  return out;
}

double verify_div_free(const FluxFamily& f, const ChartGeometry& geom, double t,
                       double u_frozen, int samples, double fd_step) {
  auto field = [&](Point z) -> Vec2 {
    return flux_eval(f, geom, u_frozen, z, t);
  };
  // deterministic LCG point cloud, margin of two stencil widths
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  auto next01 = [&]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };
  const double margin = 2.5 * fd_step;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Point z;
    z.z0 = geom.lo(0) + margin + next01() * (geom.extent(0) - 2.0 * margin);
    z.z1 = geom.dim() == 2 ? next01() * 2.0 * std::numbers::pi : 0.0;
    worst = std::max(worst, std::fabs(geom.div_at(field, z, fd_step).value));
  }
  return worst;
}

double InitialSpec::evaluate(const ChartGeometry& geom, Point z) const {
  const double az =
      geom.dim() == 1 || azimuthal_mode == 0 || azimuthal_weight == 0.0
          ? 1.0
          : 1.0 + azimuthal_weight * std::cos(azimuthal_mode * z.z1);
  switch (profile) {
    case Profile::constant:
      return value;
    case Profile::step:
      return z.z0 < jump_at ? left : right;
    case Profile::sine: {
      const double xi = (z.z0 - geom.lo(0)) / geom.extent(0);
      return amplitude * std::sin(mode * std::numbers::pi * xi) * az;
    }
    case Profile::bump:
      return amplitude * smoothstep_quintic(std::fabs(z.z0 - center) / width) *
             az;
    case Profile::cos_transverse:
      return amplitude * std::cos(z.z0) * az;
    case Profile::csv:
      throw std::invalid_argument("csv profile has no pointwise form");
  }
  throw std::invalid_argument("unknown initial profile");
}

CellField InitialSpec::sample(const StructuredGrid& grid) const {
  if (profile == Profile::csv) {
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("initial csv not readable: " + csv_path);
    return read_field_csv(in, grid);
  }
  CellField f(grid);
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    f[c] = evaluate(grid.geometry(), grid.cell_center(c));
  return f;
}

double MollifierSpec::width(double eps) { return std::sqrt(eps); }

CellField mollify_initial(const StructuredGrid& grid, const CellField& u0,
                          double eps, const MollifierSpec& spec) {
  require_grid(grid, u0);
  if (!(eps > 0.0)) throw std::invalid_argument("mollify_initial: eps > 0");
  const ChartGeometry& geom = grid.geometry();
  const double sigma = MollifierSpec::width(eps);
  const double half_extent =
      0.5 * geom.transverse_arclength(geom.lo(0), geom.hi(0));
  if (sigma > half_extent)
    throw std::invalid_argument("mollify_initial: kernel wider than the domain");

  const double radius = spec.truncation * sigma;
  const int n0 = grid.n0(), n1 = grid.n1();
  CellField out(grid);

  // index windows: transverse rows within the truncation radius, azimuthal
  // columns within radius over the smallest metric width
  double wt_min = grid.transverse_width(0);
  for (int i = 1; i < n0; ++i) wt_min = std::min(wt_min, grid.transverse_width(i));
  const int reach0 = static_cast<int>(radius / wt_min) + 2;
  int reach1 = 0;
  if (grid.dim() == 2) {
    double wa_min = grid.azimuthal_width(0);
    for (int i = 1; i < n0; ++i) wa_min = std::min(wa_min, grid.azimuthal_width(i));
    reach1 = std::min(n1 / 2, static_cast<int>(radius / wa_min) + 2);
  }

  const auto dist = grid.dist_to_boundary();
  for (int i0 = 0; i0 < n0; ++i0) {
    for (int j = 0; j < n1; ++j) {
      const std::size_t c = grid.index(i0, j);
      const Point zc = grid.cell_center(c);
      // near the boundary the kernel width shrinks with the wall distance:
      // a full-width one-sided window would bias the value by
      // O(sigma * slope) there and break Dirichlet compatibility of
      // compatible data
      const double sig_c = std::min(sigma, std::max(dist[c], 1e-300));
      const double rad_c = spec.truncation * sig_c;
      const double inv2s2 = 1.0 / (2.0 * sig_c * sig_c);
      double num = 0.0, den = 0.0;
      const int lo0 = std::max(0, i0 - reach0);
      const int hi0 = std::min(n0 - 1, i0 + reach0);
      for (int k0 = lo0; k0 <= hi0; ++k0) {
        for (int dj = -reach1; dj <= reach1; ++dj) {
          int k1 = (j + dj) % n1;
          if (k1 < 0) k1 += n1;
          const std::size_t cc = grid.index(k0, k1);
          const double d = grid.metric_offset(zc, grid.cell_center(cc));
          if (d > rad_c) continue;
          const double w = std::exp(-d * d * inv2s2) * grid.cell_volumes()[cc];
          num += w * u0[cc];
          den += w;
        }
      }
      out[c] = den > 0.0 ? num / den : u0[c];
    }
  }
  const auto mm = kernels::min_max(u0.values());
  kernels::clamp_max(out.values(), out.values(), mm.second);
  kernels::clamp_min(out.values(), out.values(), mm.first);
  return out;
}

StructuredGrid Scenario::make_grid() const { return make_grid(1, 1); }

StructuredGrid Scenario::make_grid(int num, int den) const {
  if (resolution.empty())
    throw std::invalid_argument("scenario: resolution not set");
  std::vector<int> res = resolution;
  for (int& n : res) n = n * num / den;
  return build_grid(geom, res);
}

double stable_dt(const Scenario& sc, const StructuredGrid& grid, double t,
                 std::pair<double, double> u_range) {
  const double dh_max = sc.flux.sup_dh(u_range.first, u_range.second);
  double rate = 0.0;  // sum of lambda_j / dz_j
  double sg_min = grid.cell_sqrtg()[0];
  for (double s : grid.cell_sqrtg()) sg_min = std::min(sg_min, s);
  const double lam0 = dh_max * std::fabs(sc.flux.a(t)) / sg_min;
  rate += lam0 / grid.dz0();
  if (grid.dim() == 2) {
    const double lam1 = dh_max * std::fabs(sc.flux.c_value);
    rate += lam1 / grid.dz1();
  }
  double diff_rate = 0.0;
  if (sc.viscosity > 0.0) {
    double g0 = 0.0, g1 = 0.0;
    for (double v : grid.cell_ginv00()) g0 = std::max(g0, v);
    for (double v : grid.cell_ginv11()) g1 = std::max(g1, v);
    diff_rate = 2.0 * sc.viscosity *
                (g0 / (grid.dz0() * grid.dz0()) +
                 (grid.dim() == 2 ? g1 / (grid.dz1() * grid.dz1()) : 0.0));
  }
  const double worst = std::max(rate, diff_rate);
  if (worst <= 0.0) return sc.horizon;
  return sc.cfl / worst;
}

}  // namespace mclaw
