#include "mclaw/checks.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "mclaw/bv_trace.hpp"
#include "mclaw/config.hpp"
#include "mclaw/entropy_solver.hpp"
#include "mclaw/kernels.hpp"
#include "mclaw/oracles.hpp"
#include "mclaw/viscous_solver.hpp"

namespace mclaw::checks {

using std::numbers::pi;

namespace {

CheckResult make(std::string name, std::string property, double measured,
                 double threshold, bool pass, std::string detail = "") {
  return CheckResult{std::move(name), std::move(property), measured, threshold,
                     pass, std::move(detail)};
}

const ChartGeometry& euclid() {
  static const ChartGeometry g = ChartGeometry::weighted_interval(0.0, 1.0);
  return g;
}
const ChartGeometry& wline() {
  static const ChartGeometry g = ChartGeometry::weighted_interval(0.0, 1.0, 1.0);
  return g;
}
const ChartGeometry& band() {
  static const ChartGeometry g = ChartGeometry::spherical_band(pi / 4, pi / 2);
  return g;
}
const ChartGeometry& cylinder() {
  static const ChartGeometry g = ChartGeometry::surface_of_revolution(0.0, 1.0);
  return g;
}
const ChartGeometry& wavy() {
  static const ChartGeometry g =
      ChartGeometry::surface_of_revolution(0.0, 1.0, 0.3);
  return g;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// scenario builders
// ---------------------------------------------------------------------------

Scenario sc_shock_exit(int n) {
  Scenario sc;
  sc.name = "shock_exit";
  sc.geom = euclid();
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

Scenario sc_boundary_rarefaction(int n) {
  Scenario sc;
  sc.name = "boundary_rarefaction";
  sc.geom = euclid();
  sc.flux = FluxFamily{.h_kind = HKind::burgers, .a_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::constant;
  sc.initial.value = -1.0;
  sc.resolution = {n};
  sc.horizon = 0.75;
  sc.cadence = 0.25;
  return sc;
}

Scenario sc_tvd_bump_burgers(int n) {
  Scenario sc;
  sc.name = "tvd_bump_burgers";
  sc.geom = euclid();
  sc.flux = FluxFamily{.h_kind = HKind::burgers, .a_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::bump;
  sc.initial.center = 0.3;
  sc.initial.width = 0.18;
  sc.resolution = {n};
  sc.horizon = 0.4;
  sc.cadence = 0.1;
  return sc;
}

Scenario sc_tvd_bump_linear(int n) {
  Scenario sc = sc_tvd_bump_burgers(n);
  sc.name = "tvd_bump_linear";
  sc.flux = FluxFamily{.h_kind = HKind::linear,
                       .a_kind = AKind::sine,
                       .a_value = 1.0,
                       .a_period = 0.8};
  return sc;
}

Scenario sc_varw_bump(int n) {
  Scenario sc;
  sc.name = "varw_bump";
  sc.geom = wline();
  sc.flux = FluxFamily{.h_kind = HKind::burgers, .a_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::bump;
  sc.initial.center = 0.35;
  sc.initial.width = 0.2;
  sc.resolution = {n};
  sc.horizon = 0.5;
  sc.cadence = 0.1;
  return sc;
}

Scenario sc_band_rotation(int n) {
  Scenario sc;
  sc.name = "band_rotation";
  sc.geom = band();
  sc.flux = FluxFamily{.h_kind = HKind::linear, .a_value = 0.0, .c_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::sine;
  sc.initial.azimuthal_mode = 1;
  sc.initial.azimuthal_weight = 0.6;
  sc.resolution = {n, 2 * n};
  sc.horizon = 2.0 * pi;
  sc.cadence = pi / 2.0;
  return sc;
}

Scenario sc_band_burgers(int n) {
  Scenario sc;
  sc.name = "band_burgers";
  sc.geom = band();
  sc.flux = FluxFamily{.h_kind = HKind::burgers, .a_value = 0.8, .c_value = 0.3};
  sc.initial.profile = InitialSpec::Profile::sine;
  sc.initial.azimuthal_mode = 1;
  sc.initial.azimuthal_weight = 0.4;
  sc.resolution = {n, 2 * n};
  sc.horizon = 0.5;
  sc.cadence = 0.125;
  return sc;
}

Scenario sc_band_burgers_viscous(int n, double eps) {
  Scenario sc = sc_band_burgers(n);
  sc.name = "band_burgers_viscous";
  sc.viscosity = eps;
  return sc;
}

Scenario sc_linear_smooth(int n) {
  Scenario sc;
  sc.name = "linear_smooth";
  sc.geom = euclid();
  sc.flux = FluxFamily{.h_kind = HKind::linear, .a_value = 1.0};
  sc.initial.profile = InitialSpec::Profile::sine;
  sc.initial.amplitude = 1.0;
  sc.initial.mode = 1;
  sc.resolution = {n};
  sc.horizon = 0.5;  // half the profile has left through x = 1 by then
  sc.cadence = 0.1;
  return sc;
}

Scenario sc_revolution_transport(int n) {
  Scenario sc;
  sc.name = "revolution_transport";
  sc.geom = wavy();
  sc.flux = FluxFamily{.h_kind = HKind::linear, .a_value = 1.0, .c_value = 0.4};
  sc.initial.profile = InitialSpec::Profile::bump;
  sc.initial.center = 0.35;
  sc.initial.width = 0.2;
  sc.initial.azimuthal_mode = 2;
  sc.initial.azimuthal_weight = 0.3;
  sc.resolution = {n, n};
  sc.horizon = 0.4;
  sc.cadence = 0.1;
  return sc;
}

std::vector<Scenario> shipped_scenarios(const std::string& scenario_dir) {
  namespace fs = std::filesystem;
  std::vector<Scenario> out;
  if (!scenario_dir.empty() && fs::is_directory(scenario_dir)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(scenario_dir))
      if (e.path().extension() == ".cfg") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      Scenario sc = load_scenario(f.string());
      sc.name = f.stem().string();
      out.push_back(std::move(sc));
    }
    if (!out.empty()) return out;
  }
  out = {sc_shock_exit(),       sc_boundary_rarefaction(),
         sc_tvd_bump_burgers(), sc_tvd_bump_linear(),
         sc_varw_bump(),        sc_band_rotation(),
         sc_band_burgers(),     sc_band_burgers_viscous(),
         sc_linear_smooth(),    sc_revolution_transport()};
  return out;
}

// ---------------------------------------------------------------------------
// geometry + grid suite
// ---------------------------------------------------------------------------

std::vector<CheckResult> geometry_suite() {
  std::vector<CheckResult> out;

  {  // SPD metric with exact inverse
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    bool spd = true;
    for (const ChartGeometry* g : {&wline(), &band(), &wavy()}) {
      for (int it = 0; it < 10000; ++it) {
        const Point z{g->lo(0) + u01(rng) * g->extent(0), u01(rng) * 2.0 * pi};
        const MetricSample m = g->metric_at(z);
        for (int i = 0; i < m.dim; ++i) {
          if (m.g[i][i] <= 0.0) spd = false;
          for (int j = 0; j < m.dim; ++j) {
            double acc = 0.0;
            for (int k = 0; k < m.dim; ++k) acc += m.g[i][k] * m.g_inv[k][j];
            worst = std::max(worst, std::fabs(acc - (i == j ? 1.0 : 0.0)));
          }
        }
      }
    }
    out.push_back(make("geometry.spd", "g SPD and g*g^-1 = I at 1e4 points",
                       worst, 1e-12, spd && worst < 1e-12));
  }

  {  // unit outer normals on every boundary face
    double worst = 0.0;
    for (const ChartGeometry* g : {&wline(), &band(), &wavy()}) {
      const StructuredGrid grid(*g, 32, g->dim() == 2 ? 64 : 1);
      for (const auto& bf : grid.boundary_faces())
        worst = std::max(
            worst, std::fabs(g->norm_g(bf.center, bf.normal) - 1.0));
    }
    out.push_back(make("geometry.normal-normalization",
                       "| |N|_g - 1 | on all boundary faces", worst, 1e-12,
                       worst < 1e-12));
  }

  {  // shipped flux families are divergence-free
    double worst = 0.0;
    const FluxFamily f1{.h_kind = HKind::burgers, .a_value = 0.8, .c_value = 0.3};
    const FluxFamily f2{.h_kind = HKind::linear, .a_value = 1.0, .c_value = 0.4};
    const FluxFamily f3{.h_kind = HKind::linear, .a_value = 2.0};
    for (double t : {0.0, 0.5, 1.0}) {
      worst = std::max(worst, verify_div_free(f1, band(), t, 0.8));
      worst = std::max(worst, verify_div_free(f2, wavy(), t, 1.0));
      worst = std::max(worst, verify_div_free(f3, wline(), t, 1.0));
    }
    out.push_back(make("geometry.divfree-families",
                       "max |div_g f(u,.,t)| over shipped families", worst,
                       1e-5, worst < 1e-5));
  }

  {  // commutator identity on the band: halves per fd_step halving
    auto costh = [](Point z) { return std::cos(z.z0); };
    const Point z{pi / 3, 0.9};
    const double r1 = band().commutator_residual_at(costh, z, 1e-2);
    const double r2 = band().commutator_residual_at(costh, z, 5e-3);
    const double r3 = band().commutator_residual_at(costh, z, 2.5e-3);
    const double worst_ratio = std::max(r2 / r1, r3 / r2);
    out.push_back(make("geometry.commutator-band-halving",
                       "|[lap,grad]u - Ric(grad u)|_g halves with fd_step",
                       worst_ratio, 0.52, worst_ratio <= 0.52,
                       "residuals " + num(r1) + " " + num(r2) + " " + num(r3)));
  }

  {  // flat geometries: the identity collapses to rounding
    auto smooth = [](Point z) { return std::sin(2.0 * z.z0) + z.z0 * z.z0; };
    auto sins = [](Point z) { return std::sin(z.z0) * (1.0 + 0.0 * z.z1); };
    double worst = 0.0;
    for (double x : {0.3, 0.5, 0.7}) {
      worst = std::max(worst,
                       euclid().commutator_residual_at(smooth, {x, 0.0}, 1e-3));
      worst = std::max(
          worst, cylinder().commutator_residual_at(sins, {x, 1.0}, 1e-3));
    }
    out.push_back(make("geometry.commutator-flat-floor",
                       "flat charts: residual at the rounding floor", worst,
                       1e-8, worst <= 1e-8));
  }

  {  // convergence order of the pointwise operators
    auto radial = [](Point) -> Vec2 { return {1.0, 0.0}; };
    auto costh = [](Point z) { return std::cos(z.z0); };
    const Point z{pi / 3, 0.7};
    double e_div[3], e_lap[3];
    const double steps[3] = {4e-3, 2e-3, 1e-3};
    for (int k = 0; k < 3; ++k) {
      e_div[k] =
          std::fabs(band().div_at(radial, z, steps[k]).value - 1.0 / std::tan(pi / 3));
      e_lap[k] = std::fabs(band().laplace_at(costh, z, steps[k]).value +
                           2.0 * std::cos(pi / 3));
    }
    const double order = std::min(
        std::min(std::log2(e_div[0] / e_div[1]), std::log2(e_div[1] / e_div[2])),
        std::min(std::log2(e_lap[0] / e_lap[1]), std::log2(e_lap[1] / e_lap[2])));
    out.push_back(make("geometry.operator-order",
                       "div_g and lap_g converge at order >= 1.7", order, 1.7,
                       order >= 1.7));
  }

  {  // volume quadrature order
    double err[3];
    const double exact = pi * std::sqrt(2.0);
    const int levels[3] = {16, 32, 64};
    for (int k = 0; k < 3; ++k) {
      const StructuredGrid g(band(), levels[k], 2 * levels[k]);
      err[k] = std::fabs(g.total_volume() - exact);
    }
    const double order =
        std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
    out.push_back(make("grid.volume-order",
                       "integrate(1) -> vol_g(M) at order >= 1.9", order, 1.9,
                       order >= 1.9));
  }

  {  // discrete divergence theorem telescopes
    const StructuredGrid g(band(), 24, 48);
    auto xf = [](Point z) -> Vec2 {
      return {std::sin(z.z0) + 0.2 * std::cos(z.z1), std::cos(3.0 * z.z1)};
    };
    const int n0 = g.n0(), n1 = g.n1();
    double net_total = 0.0, boundary_total = 0.0;
    std::vector<double> f0(static_cast<std::size_t>(n0 + 1) * n1);
    for (int i0f = 0; i0f <= n0; ++i0f)
      for (int j = 0; j < n1; ++j)
        f0[static_cast<std::size_t>(i0f) * n1 + j] =
            g.face0_sqrtg()[static_cast<std::size_t>(i0f) * n1 + j] *
            xf({g.face0_coord(i0f), g.center1(j)})[0] * g.dz1();
    for (int i0 = 0; i0 < n0; ++i0)
      for (int j = 0; j < n1; ++j) {
        const double s = g.face1_sqrtg_row()[i0];
        const double pl = g.center1(j) - 0.5 * g.dz1();
        const double pr = g.center1(j) + 0.5 * g.dz1();
        net_total += f0[static_cast<std::size_t>(i0 + 1) * n1 + j] -
                     f0[static_cast<std::size_t>(i0) * n1 + j] +
                     s * xf({g.center0(i0), pr})[1] * g.dz0() -
                     s * xf({g.center0(i0), pl})[1] * g.dz0();
      }
    for (const auto& bf : g.boundary_faces())
      boundary_total += (bf.side == 0 ? -1.0 : 1.0) *
                        f0[static_cast<std::size_t>(bf.side == 0 ? 0 : n0) * n1 +
                           bf.j];
    const double resid = std::fabs(net_total - boundary_total);
    out.push_back(make("grid.divergence-theorem",
                       "sum of cell divergences = boundary flux sum", resid,
                       1e-12, resid < 1e-12));
  }

  {  // cutoff measure decay: integral of R_delta d|grad u| -> 0 linearly
    const StructuredGrid g(band(), 96, 192);
    const CellField u = sample_field(g, [](Point z) { return std::cos(z.z0); });
    const GradientField gr = discrete_gradient(g, u);
    CellField gnorm(g);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const double g00 = 1.0 / g.cell_ginv00()[c];
      const double g11 = 1.0 / g.cell_ginv11()[c];
      gnorm[c] = std::sqrt(g00 * gr.comp0[c] * gr.comp0[c] +
                           g11 * gr.comp1[c] * gr.comp1[c]);
    }
    double vals[3];
    const double deltas[3] = {0.2, 0.1, 0.05};
    for (int k = 0; k < 3; ++k) {
      const CutoffField r = build_cutoff(g, deltas[k]);
      std::vector<double> prod(g.cell_count());
      for (std::size_t c = 0; c < g.cell_count(); ++c)
        prod[c] = r.values[c] * gnorm[c];
      vals[k] = kernels::dot(prod, g.cell_volumes());
    }
    const double worst_ratio = std::max(vals[1] / vals[0], vals[2] / vals[1]);
    out.push_back(make("grid.cutoff-measure-decay",
                       "integral R_delta d|grad u| shrinks ~linearly in delta",
                       worst_ratio, 0.65, worst_ratio <= 0.65,
                       num(vals[0]) + " " + num(vals[1]) + " " + num(vals[2])));
  }

  {  // small-level-set decay for u vanishing on the boundary
    const StructuredGrid g(band(), 96, 192);
    const double len = pi / 4;
    const CellField u = sample_field(g, [&](Point z) {
      return std::sin(pi * (z.z0 - pi / 4) / len);
    });
    const GradientField gr = discrete_gradient(g, u);
    double vals[3];
    const double etas[3] = {0.1, 0.05, 0.025};
    for (int k = 0; k < 3; ++k) {
      double acc = 0.0;
      for (std::size_t c = 0; c < g.cell_count(); ++c) {
        if (std::fabs(u[c]) >= etas[k]) continue;
        const double g00 = 1.0 / g.cell_ginv00()[c];
        const double g11 = 1.0 / g.cell_ginv11()[c];
        acc += std::sqrt(g00 * gr.comp0[c] * gr.comp0[c] +
                         g11 * gr.comp1[c] * gr.comp1[c]) *
               g.cell_volumes()[c];
      }
      vals[k] = acc;
    }
    const double slack = 0.05 * vals[0] + 1e-12;
    const bool pass = vals[1] <= vals[0] + slack && vals[2] <= vals[1] + slack;
    out.push_back(make("grid.saks-levelset-decay",
                       "integral |grad u| over {|u|<eta} decays with eta",
                       vals[2], vals[0], pass,
                       num(vals[0]) + " " + num(vals[1]) + " " + num(vals[2])));
  }

  return out;
}

// ---------------------------------------------------------------------------
// trace suite
// ---------------------------------------------------------------------------

std::vector<CheckResult> trace_suite() {
  std::vector<CheckResult> out;

  {  // boundedness for arbitrary fields
    const StructuredGrid g(band(), 24, 32);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    double worst = 0.0;
    for (int it = 0; it < 30; ++it) {
      CellField f(g);
      for (auto& v : f.values()) v = d(rng);
      const double sup = kernels::max_abs(f.values());
      for (double tv : bv::extract_trace(g, f).values)
        worst = std::max(worst, std::fabs(tv) - sup);
    }
    out.push_back(make("trace.boundedness", "|Tu|_inf <= |u|_inf, any field",
                       worst, 0.0, worst <= 0.0));
  }

  {  // linearity of the estimator
    const StructuredGrid g(band(), 32, 48);
    const double len = pi / 4;
    const CellField u = sample_field(g, [&](Point z) {
      return std::sin(pi * (z.z0 - pi / 4) / len) * (1.0 + 0.3 * std::sin(z.z1));
    });
    const CellField v = sample_field(g, [&](Point z) {
      return std::sin(2.0 * pi * (z.z0 - pi / 4) / len) + 0.1 * std::cos(z.z1);
    });
    CellField combo(g);
    kernels::lincomb2(combo.values(), 0.6, u.values(), -1.7, v.values());
    const auto tu = bv::extract_trace(g, u).values;
    const auto tv = bv::extract_trace(g, v).values;
    const auto tc = bv::extract_trace(g, combo).values;
    double worst = 0.0;
    for (std::size_t k = 0; k < tc.size(); ++k)
      worst = std::max(worst, std::fabs(tc[k] - (0.6 * tu[k] - 1.7 * tv[k])));
    out.push_back(make("trace.linearity",
                       "T(a u + b v) = a Tu + b Tv off the clamp", worst, 1e-12,
                       worst < 1e-12));
  }

  {  // integration-by-parts identity, smooth field
    auto radial = [](Point) -> Vec2 { return {1.0, 0.0}; };
    double resid[3];
    const int levels[3] = {32, 64, 128};
    for (int k = 0; k < 3; ++k) {
      const StructuredGrid g(band(), levels[k], 2 * levels[k]);
      const CellField u =
          sample_field(g, [](Point z) { return std::cos(z.z0); });
      resid[k] = bv::trace_formula_residual(g, u, radial,
                                            bv::SurrogateKind::smooth_field);
    }
    const double order = std::min(std::log2(resid[0] / resid[1]),
                                  std::log2(resid[1] / resid[2]));
    out.push_back(make("trace.formula-order-smooth",
                       "int u div X = -int <X,sigma>d|Du| + int <X,N>Tu, "
                       "order >= 1.7",
                       order, 1.7, order >= 1.7,
                       num(resid[0]) + " " + num(resid[1]) + " " + num(resid[2])));
  }

  {  // the same identity for a piecewise-constant field
    auto radial = [](Point) -> Vec2 { return {1.0, 0.0}; };
    const double mid = pi / 4 + pi / 8;
    double resid[3];
    const int levels[3] = {32, 64, 128};
    for (int k = 0; k < 3; ++k) {
      const StructuredGrid g(band(), levels[k], 2 * levels[k]);
      const CellField u =
          sample_field(g, [&](Point z) { return z.z0 > mid ? 1.0 : 0.0; });
      resid[k] = bv::trace_formula_residual(
          g, u, radial, bv::SurrogateKind::piecewise_constant);
    }
    const double order = std::min(std::log2(resid[0] / resid[1]),
                                  std::log2(resid[1] / resid[2]));
    out.push_back(make("trace.formula-order-pc",
                       "trace identity for a step field, order >= 0.9", order,
                       0.9, order >= 0.9,
                       num(resid[0]) + " " + num(resid[1]) + " " + num(resid[2])));
  }

  {  // lower semicontinuity surrogate of the jump TV
    const StructuredGrid g(euclid(), 200);
    CellField st(g);
    for (int i = 0; i < g.n0(); ++i) st[i] = g.center0(i) > 0.5 ? 1.0 : 0.0;
    const double base = bv::total_variation(g, st).tv_jump;
    double worst = 0.0;
    for (int width : {2, 4, 8, 16}) {
      CellField sm(g);
      for (int i = 0; i < g.n0(); ++i) {
        double acc = 0.0;
        int cnt = 0;
        for (int k = -width; k <= width; ++k) {
          acc += st[std::clamp(i + k, 0, g.n0() - 1)];
          ++cnt;
        }
        sm[i] = acc / cnt;
      }
      worst = std::max(worst, base - bv::total_variation(g, sm).tv_jump);
    }
    out.push_back(make("trace.tv-lower-semicontinuity",
                       "tv_jump(u) <= liminf tv_jump(u_k) for smoothings",
                       worst, 1e-12, worst <= 1e-12));
  }

  {  // trace commutes with composition, error ~ h with halving decay
    double c[3];
    const int levels[3] = {32, 64, 128};
    for (int k = 0; k < 3; ++k) {
      const StructuredGrid g(band(), levels[k], 2 * levels[k]);
      const CellField u =
          sample_field(g, [](Point z) { return std::cos(z.z0); });
      c[k] = bv::compose_trace_check(g, u, [](double z) { return z * z; });
    }
    const bool pass = c[1] <= 0.65 * c[0] + 1e-12 && c[2] <= 0.65 * c[1] + 1e-12;
    out.push_back(make("trace.compose-decay",
                       "|T[h(u)] - h(Tu)| halves under refinement", c[2], c[0],
                       pass, num(c[0]) + " " + num(c[1]) + " " + num(c[2])));
  }

  {  // cutoff pairing approximates the boundary integral within 2%
    const StructuredGrid g(band(), 64, 128);
    auto outward = [](Point z) -> Vec2 {
      const double a = (z.z0 - pi / 4) / (pi / 4);
      return {-(2.0 * smoothstep_quintic(a) - 1.0), 0.0};
    };
    const double expect = 2.0 * pi * (std::sin(pi / 4) + std::sin(pi / 2));
    const double got =
        bv::cutoff_pairing(g, CellField(g, 1.0), outward, 0.05);
    const double rel = std::fabs(got - expect) / expect;
    out.push_back(make("trace.cutoff-pairing",
                       "int u <grad R_d, X> dv -> int Tu <X,N> dv~ (2% at "
                       "delta=0.05)",
                       rel, 0.02, rel <= 0.02,
                       "got " + num(got) + " expect " + num(expect)));
  }

  {  // flux pairing converges as delta shrinks
    const StructuredGrid g(band(), 64, 128);
    const CellField u = sample_field(g, [](Point z) { return std::cos(z.z0); });
    const CellField phi(g, 1.0);
    auto flux = [](double uv, Point z, double) -> Vec2 {
      return {0.5 * uv * uv / std::sin(z.z0), 0.5 * uv * uv * 0.3};
    };
    const auto p1 = bv::flux_trace_pairing(g, u, flux, 0.0, phi, 0.1);
    const auto p2 = bv::flux_trace_pairing(g, u, flux, 0.0, phi, 0.05);
    const double d1 = std::fabs(p1.first - p1.second);
    const double d2 = std::fabs(p2.first - p2.second);
    const bool pass = d2 <= d1 + 1e-12 && d2 <= 0.05 * std::fabs(p2.second) + 0.05;
    out.push_back(make("trace.flux-pairing-delta",
                       "int <f(u),grad R_d> phi -> int <f(Tu),N> phi dv~", d2,
                       d1, pass, num(d1) + " -> " + num(d2)));
  }

  {  // composed fields stay BV with the expected bound
    const StructuredGrid g(euclid(), 200);
    CellField st(g);
    for (int i = 0; i < g.n0(); ++i) st[i] = g.center0(i) > 0.5 ? 1.0 : 0.0;
    const double base = bv::total_variation(g, st).tv_jump;
    auto f = [](double uv, Point z) { return 0.5 * uv * (1.0 + z.z0); };
    const double got = bv::composed_tv_bounded(g, st, f);
    const double bound = 1.0 * base + 0.5 * g.total_volume();
    out.push_back(make("trace.composed-tv-bound",
                       "tv(F(u,.)) <= sup|dF/du| tv(u) + sup|grad_x F| vol(M)",
                       got, bound, got <= bound + 1e-12));
  }

  return out;
}

// ---------------------------------------------------------------------------
// viscous suite
// ---------------------------------------------------------------------------

namespace {

double initial_tv_jump(const Scenario& sc) {
  const StructuredGrid g = sc.make_grid();
  return bv::total_variation(g, sc.initial.sample(g)).tv_jump;
}

}  // namespace

std::vector<CheckResult> viscous_suite() {
  std::vector<CheckResult> out;

  {  // mollifier: exact sup bound plus monotone L1/TV tables
    const StructuredGrid g(euclid(), 400);
    InitialSpec step;
    step.profile = InitialSpec::Profile::step;
    step.left = 1.0;
    step.right = 0.0;
    const CellField u0 = step.sample(g);
    const double tv0 = bv::total_variation(g, u0).tv_jump;
    double sup_excess = 0.0, prev_l1 = 1e100, prev_tv = 1e100;
    bool monotone = true;
    for (double eps : {0.1, 0.05, 0.025}) {
      const CellField ue = mollify_initial(g, u0, eps);
      sup_excess = std::max(sup_excess, kernels::max_abs(ue.values()) -
                                            kernels::max_abs(u0.values()));
      const double l1 = kernels::l1_diff_weighted(ue.values(), u0.values(),
                                                  g.cell_volumes());
      const double tv_gap = std::fabs(bv::total_variation(g, ue).tv_jump - tv0);
      monotone = monotone && l1 < prev_l1 && tv_gap <= prev_tv + 1e-12;
      prev_l1 = l1;
      prev_tv = tv_gap;
    }
    out.push_back(make("viscous.mollifier-tables",
                       "|u0_e|_inf <= |u0|_inf exactly; L1 and TV gaps "
                       "monotone in eps",
                       sup_excess, 0.0, monotone && sup_excess <= 0.0));
  }

  {  // H^{2,1} surrogate bounded by one constant across the eps list
    const StructuredGrid g(euclid(), 400);
    InitialSpec step;
    step.profile = InitialSpec::Profile::step;
    step.left = 1.0;
    step.right = 0.0;
    const CellField u0 = step.sample(g);
    const double tv0 = bv::total_variation(g, u0).tv_jump;
    auto surrogate = [&](double eps) {
      const CellField ue = mollify_initial(g, u0, eps);
      const double l1 = kernels::l1_weighted(ue.values(), g.cell_volumes());
      const double g1 = bv::total_variation(g, ue).tv_gradient;
      const CellField lap = discrete_laplace(g, ue, BoundaryMode::dirichlet_zero);
      return eps * (l1 + g1 +
                    kernels::l1_weighted(lap.values(), g.cell_volumes()));
    };
    const double c0 = 1.25 * surrogate(0.1) / tv0;
    const double worst =
        std::max(surrogate(0.05), surrogate(0.025)) / tv0;
    out.push_back(make("viscous.mollifier-h21",
                       "eps(|u|+|grad u|+|lap u|)_L1 <= c0 tv(u0), one c0",
                       worst, c0, worst <= c0, "c0 = " + num(c0)));
  }

  {  // maximum principle across the eps list
    double worst = -1e300;
    for (double eps : {0.1, 0.05, 0.025}) {
      const Scenario sc = sc_band_burgers_viscous(32, eps);
      const double sup0 = 1.4;
      const ViscousResult res = solve_viscous(sc);
      for (const SeriesRecord& r : res.series)
        worst = std::max(worst, r.linf - sup0);
    }
    out.push_back(make("viscous.max-principle",
                       "|u(t)|_inf <= |u0|_inf + 1e-8 for every record", worst,
                       1e-8, worst <= 1e-8));
  }

  {  // time-derivative bound with a single fitted c1
    const double tv0 = initial_tv_jump(sc_band_burgers_viscous(32, 0.1));
    const ViscousResult fit_run = solve_viscous(sc_band_burgers_viscous(32, 0.1));
    const double c1 = 1.25 * fit_run.max_dudt_l1 / tv0;
    double worst = 0.0;
    for (double eps : {0.05, 0.025}) {
      const ViscousResult res = solve_viscous(sc_band_burgers_viscous(32, eps));
      worst = std::max(worst, res.max_dudt_l1 / tv0);
    }
    {  // refined resolution, largest eps
      const Scenario sc = sc_band_burgers_viscous(64, 0.1);
      const double tvf = initial_tv_jump(sc);
      const ViscousResult res = solve_viscous(sc);
      worst = std::max(worst, res.max_dudt_l1 / tvf);
    }
    out.push_back(make("viscous.dudt-c1",
                       "max_t |du/dt|_L1 <= c1 tv(u0) across eps and N", worst,
                       c1, worst <= c1, "c1 = " + num(c1)));
  }

  {  // conservation with the boundary flux accounted
    const Scenario sc = sc_band_burgers_viscous(16, 0.02);
    auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
    ViscousSolver solver(sc, grid);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double m0 =
          kernels::dot(solver.state().values(), grid->cell_volumes());
      const double dt = solver.stable_dt_now();
      solver.step(dt);
      const double m1 =
          kernels::dot(solver.state().values(), grid->cell_volumes());
      worst = std::max(worst,
                       std::fabs(m1 - m0 + dt * solver.last_boundary_flux()));
    }
    out.push_back(make("viscous.conservation",
                       "mass change per step = -dt * boundary flux", worst,
                       1e-10, worst <= 1e-10));
  }

  {  // uniform-in-eps monitors
    double fit_dudt = 0.0, fit_tv = 0.0, fit_sup = 0.0;
    bool pass = true;
    bool first = true;
    for (double eps : {0.1, 0.05, 0.025}) {
      const ViscousResult res = solve_viscous(sc_band_burgers_viscous(32, eps));
      double tv_max = 0.0, sup_max = 0.0;
      for (const SeriesRecord& r : res.series) {
        tv_max = std::max(tv_max, r.tv_jump);
        sup_max = std::max(sup_max, r.linf);
      }
      if (first) {
        fit_dudt = 1.25 * res.max_dudt_l1;
        fit_tv = 1.25 * tv_max;
        fit_sup = 1.25 * sup_max;
        first = false;
      } else {
        pass = pass && res.max_dudt_l1 <= fit_dudt && tv_max <= fit_tv &&
               sup_max <= fit_sup;
      }
    }
    out.push_back(make("viscous.uniform-monitors",
                       "sup, |du/dt|_L1, tv bounded uniformly in eps", pass ? 0 : 1,
                       0.0, pass));
  }

  {  // TV envelope: fit at N = 100, constants stable under refinement
    bool pass = true;
    std::string detail;
    for (int variant = 0; variant < 2; ++variant) {
      auto build = [&](int n) {
        Scenario sc = variant == 0 ? sc_varw_bump(n) : sc_band_burgers(n);
        sc.monitor_entropy = false;
        return sc;
      };
      const Scenario coarse = build(100);
      const double tv0 = initial_tv_jump(coarse);
      const HyperbolicResult base = solve_hyperbolic(coarse);
      const TvEnvelope fit0 = fit_tv_envelope(base.series, tv0, coarse.horizon);
      detail += coarse.name + ": c2=" + num(fit0.c2) + " c3=" + num(fit0.c3) + " ";
      for (int n : {200, 400}) {
        const Scenario sc = build(n);
        const HyperbolicResult res = solve_hyperbolic(sc);
        const double tvn = initial_tv_jump(sc);
        const TvEnvelope fit = fit_tv_envelope(res.series, tvn, sc.horizon);
        const double rel = std::fabs(fit.value_at_horizon -
                                     fit0.value_at_horizon) /
                           fit0.value_at_horizon;
        pass = pass && rel <= 0.2;
      }
    }
    out.push_back(make("viscous.tv-envelope",
                       "tv(t) <= (1+c2 t) tv0 (1+c3 t e^{c3 t}); fit stable "
                       "+-20% under refinement",
                       pass ? 0 : 1, 0.0, pass, detail));
  }

  return out;
}

// ---------------------------------------------------------------------------
// entropy suite
// ---------------------------------------------------------------------------

std::vector<CheckResult> entropy_suite(const std::string& scenario_dir) {
  std::vector<CheckResult> out;
  const std::vector<Scenario> shipped = shipped_scenarios(scenario_dir);

  {  // maximum principle on every shipped scenario
    double worst = -1e300;
    std::string worst_name;
    for (const Scenario& sc : shipped) {
      const StructuredGrid g = sc.make_grid();
      const CellField u0 = sc.initial.sample(g);
      const double sup0 = kernels::max_abs(u0.values());
      std::vector<SeriesRecord> series;
      if (sc.viscosity > 0.0) {
        series = solve_viscous(sc).series;
      } else {
        Scenario fast = sc;
        fast.monitor_entropy = false;
        series = solve_hyperbolic(fast).series;
      }
      for (const SeriesRecord& r : series)
        if (r.linf - sup0 > worst) {
          worst = r.linf - sup0;
          worst_name = sc.name;
        }
    }
    out.push_back(make("entropy.max-principle",
                       "|u(t)|_inf <= |u0|_inf + 1e-8, every shipped scenario",
                       worst, 1e-8, worst <= 1e-8, "worst: " + worst_name));
  }

  {  // exactly TVD per step for the compatible flat 1D scenarios
    double worst = -1e300;
    for (Scenario sc : {sc_tvd_bump_burgers(100), sc_tvd_bump_linear(100)}) {
      sc.monitor_entropy = false;
      auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
      HyperbolicSolver solver(sc, grid);
      double tv_prev = bv::total_variation(*grid, solver.state()).tv_jump;
      while (solver.time() < sc.horizon - 1e-12) {
        solver.step(
            std::min(solver.stable_dt_now(), sc.horizon - solver.time()));
        const double tv = bv::total_variation(*grid, solver.state()).tv_jump;
        worst = std::max(worst, tv - tv_prev);
        tv_prev = tv;
      }
    }
    out.push_back(make("entropy.tvd-1d",
                       "tv_jump(u^{n+1}) <= tv_jump(u^n), inflow-compatible "
                       "flat scenarios",
                       worst, 1e-12, worst <= 1e-12));
  }

  {  // cell entropy inequality on every shipped hyperbolic scenario
    double worst = 0.0;
    std::string worst_name;
    for (const Scenario& sc : shipped) {
      if (sc.viscosity > 0.0) continue;
      Scenario mon = sc;
      mon.monitor_entropy = true;
      const HyperbolicResult res = solve_hyperbolic(mon);
      if (res.max_entropy_residual > worst) {
        worst = res.max_entropy_residual;
        worst_name = sc.name;
      }
    }
    out.push_back(make("entropy.cell-inequality",
                       "|u'-k| - |u-k| + dt div Q(u,k) <= 0 per cell/step/k",
                       worst, 1e-12, worst <= 1e-12, "worst: " + worst_name));
  }

  {  // weak entropy inequality, refining
    Scenario sc200 = sc_shock_exit(200);
    sc200.cadence = 0.05;
    sc200.monitor_entropy = false;
    HyperbolicOptions opt;
    opt.store_trajectory = true;
    const double w200 =
        entropy_residual_weak(sc200, solve_hyperbolic(sc200, opt));
    Scenario sc400 = sc_shock_exit(400);
    sc400.cadence = 0.05;
    sc400.monitor_entropy = false;
    const double w400 =
        entropy_residual_weak(sc400, solve_hyperbolic(sc400, opt));
    const bool pass = w200 >= -5e-3 && w400 >= -5e-3 &&
                      w400 >= w200 - std::max(1e-9, 0.1 * std::fabs(w200));
    out.push_back(make("entropy.weak-form",
                       "min over (k,phi) of the weak entropy form >= -5e-3, "
                       "improving",
                       std::min(w200, w400), -5e-3, pass,
                       num(w200) + " -> " + num(w400)));
  }

  {  // BLN residual under refinement
    double worst400 = 0.0;
    double prev = 1e300;
    bool decreasing = true;
    std::string detail;
    for (int n : {100, 200, 400}) {
      Scenario sc = sc_shock_exit(n);
      sc.monitor_entropy = false;
      const HyperbolicResult res = solve_hyperbolic(sc);
      double worst = 0.0;
      const auto& tf = res.traces.back().second;  // t = 1
      const auto faces = res.grid->boundary_faces();
      for (std::size_t k = 0; k < faces.size(); ++k)
        worst = std::max(worst, bln_residual(sc.flux, res.grid->geometry(),
                                             tf.values[k], faces[k], 1.0));
      decreasing = decreasing && worst <= prev + 1e-12;
      prev = worst;
      if (n == 400) worst400 = worst;
      detail += num(worst) + " ";
    }
    out.push_back(make("entropy.bln-refinement",
                       "min_{k in I(Tu,0)} sgn(Tu)<f(Tu)-f(k),N> -> 0 under "
                       "refinement",
                       worst400, 0.05, decreasing && worst400 <= 0.05, detail));
  }

  {  // the analytic violation case is detected at the right value
    const Scenario sc = sc_shock_exit(100);
    const StructuredGrid g = sc.make_grid();
    const double got = bln_residual(sc.flux, g.geometry(), -1.0,
                                    g.boundary_faces()[1], 0.0);
    out.push_back(make("entropy.bln-violation",
                       "Tu = -1 at the right boundary raises residual 0.5",
                       got, 0.5, std::fabs(got - 0.5) <= 1e-6));
  }

  {  // conservation per step
    const Scenario sc = sc_shock_exit(200);
    auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
    HyperbolicSolver solver(sc, grid);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double m0 =
          kernels::dot(solver.state().values(), grid->cell_volumes());
      const double dt = solver.stable_dt_now();
      solver.step(dt);
      const double m1 =
          kernels::dot(solver.state().values(), grid->cell_volumes());
      worst = std::max(worst,
                       std::fabs(m1 - m0 + dt * solver.last_boundary_flux()));
    }
    out.push_back(make("entropy.conservation",
                       "mass change per step = -dt * boundary godunov flux",
                       worst, 1e-12, worst <= 1e-12));
  }

  return out;
}

// ---------------------------------------------------------------------------
// contraction suite
// ---------------------------------------------------------------------------

std::vector<CheckResult> contraction_suite() {
  std::vector<CheckResult> out;

  {
    Scenario sc = sc_shock_exit(100);
    sc.monitor_entropy = false;
    InitialSpec a;
    a.profile = InitialSpec::Profile::constant;
    a.value = 1.0;
    const auto same = l1_contraction_check(sc, a, a);
    double worst = 0.0;
    for (const auto& [t, d] : same) worst = std::max(worst, d);
    out.push_back(make("contraction.identical",
                       "identical data stay at distance zero", worst, 0.0,
                       worst == 0.0));
  }

  {
    Scenario sc = sc_shock_exit(100);
    sc.monitor_entropy = false;
    InitialSpec a, b;
    a.profile = b.profile = InitialSpec::Profile::constant;
    a.value = 1.0;
    b.value = 0.5;
    const auto dist = l1_contraction_check(sc, a, b);
    double worst = -1e300;
    for (std::size_t i = 1; i < dist.size(); ++i)
      worst = std::max(worst, dist[i].second - dist[i - 1].second);
    const bool shrank = dist.back().second < dist.front().second;
    out.push_back(make("contraction.burgers-pair",
                       "|u-v|_L1(t) non-increasing within 1e-10", worst, 1e-10,
                       worst <= 1e-10 && shrank));
  }

  {
    Scenario sc = sc_linear_smooth(100);
    sc.horizon = 0.8;
    sc.cadence = 0.1;
    InitialSpec a = sc.initial;
    InitialSpec b = sc.initial;
    b.amplitude = 0.5;
    const auto dist = l1_contraction_check(sc, a, b);
    double worst = -1e300;
    for (std::size_t i = 1; i < dist.size(); ++i)
      worst = std::max(worst, dist[i].second - dist[i - 1].second);
    out.push_back(make("contraction.linear-pair",
                       "linear flux: distance constant then non-increasing",
                       worst, 1e-10, worst <= 1e-10));
  }

  return out;
}

// ---------------------------------------------------------------------------
// limit suite (oracles + vanishing viscosity)
// ---------------------------------------------------------------------------

std::vector<CheckResult> limit_suite() {
  std::vector<CheckResult> out;

  {  // tracer round trip
    const FluxFamily flux{.h_kind = HKind::linear, .a_value = 0.3, .c_value = 0.8};
    const oracles::CharacteristicTracer tracer(wavy(), flux, 1e-3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(0.2, 0.6);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
      const Point z0{d(rng), 2.0 * d(rng)};
      const Point z1 = tracer.trace_forward(z0, 0.0, 0.4);
      const auto back = tracer.trace_back(z1, 0.4);
      if (back.exited) {
        worst = 1.0;
        break;
      }
      worst = std::max(worst, std::fabs(back.end.z0 - z0.z0));
      worst = std::max(worst,
                       std::fabs(std::remainder(back.end.z1 - z0.z1, 2.0 * pi)));
    }
    out.push_back(make("limit.tracer-roundtrip",
                       "forward then backward tracing returns the start",
                       worst, 1e-8, worst <= 1e-8));
  }

  {  // closed forms satisfy the conservation law pointwise
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dx(0.05, 0.95), dt(0.2, 0.9);
    const double h = 1e-5;
    double worst = 0.0;
    for (int it = 0; it < 1000; ++it) {
      const double x = dx(rng), t = dt(rng);
      const bool near_shock =
          t < 0.41 && std::fabs(x - (0.8 + 0.5 * t)) < 6.0 * h;
      if (near_shock || std::fabs(x - t) <= 6.0 * h || x <= 6.0 * h) continue;
      auto u = [&](double xx, double tt) {
        return oracles::burgers_interval_exact(oracles::BurgersCase::shock_exit,
                                               xx, tt);
      };
      const double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
      const double fx = (0.5 * u(x + h, t) * u(x + h, t) -
                         0.5 * u(x - h, t) * u(x - h, t)) /
                        (2.0 * h);
      worst = std::max(worst, std::fabs(ut + fx) /
                                  (1.0 + std::fabs(ut) + std::fabs(fx)));
    }
    out.push_back(make("limit.oracle-pointwise",
                       "d_t u + d_x(u^2/2) = 0 off the waves for the closed "
                       "forms",
                       worst, 1e-5, worst <= 1e-5));
  }

  {  // solver converges to the oracles with the expected orders
    auto order_for = [&](Scenario base, oracles::SpaceTimeFn oracle) {
      double err[3];
      int idx = 0;
      for (int mul : {1, 2, 4}) {
        Scenario sc = base;
        for (int& n : sc.resolution) n *= mul;
        sc.monitor_entropy = false;
        const HyperbolicResult res = solve_hyperbolic(sc);
        err[idx++] =
            oracles::l1_error(*res.grid, res.final_state, oracle, sc.horizon);
      }
      return std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
    };
    const Scenario lin = sc_linear_smooth(100);
    const double h_lin = lin.geom.extent(0) / 100;
    auto tracer = std::make_shared<oracles::CharacteristicTracer>(
        lin.geom, lin.flux, 0.0625 * h_lin);
    const double order_lin = order_for(lin, [tracer, lin](Point z, double t) {
      return tracer->solution(
          [&](Point p) { return lin.initial.evaluate(lin.geom, p); }, z, t);
    });
    const double order_shock =
        order_for(sc_shock_exit(100), [](Point z, double t) {
          return oracles::burgers_interval_exact(
              oracles::BurgersCase::shock_exit, z.z0, t);
        });
    const bool pass = order_lin >= 0.8 && order_shock >= 0.5;
    out.push_back(make("limit.oracle-orders",
                       "L1 order >= 0.8 (linear) and >= 0.5 (burgers shock)",
                       std::min(order_lin, order_shock), 0.5, pass,
                       "linear " + num(order_lin) + ", shock " +
                           num(order_shock)));
  }

  {  // one full rotation returns the data with error <= C h T
    auto run_err = [&](int n) {
      Scenario sc = sc_band_rotation(n);
      sc.monitor_entropy = false;
      const HyperbolicResult res = solve_hyperbolic(sc);
      const CellField u0 = sc.initial.sample(*res.grid);
      return kernels::l1_diff_weighted(res.final_state.values(), u0.values(),
                                       res.grid->cell_volumes());
    };
    const double e24 = run_err(24);
    const double h24 = (pi / 4) / 24;
    const double cpin = 1.3 * e24 / (h24 * 2.0 * pi);
    const double e48 = run_err(48);
    const double h48 = (pi / 4) / 48;
    const bool pass = e48 <= cpin * h48 * 2.0 * pi;
    out.push_back(make("limit.rotation-return",
                       "one period of rigid rotation: |u(T)-u0|_L1 <= C h T",
                       e48, cpin * h48 * 2.0 * pi, pass,
                       "e(24)=" + num(e24) + " e(48)=" + num(e48)));
  }

  {  // vanishing viscosity distances decrease for the two wave scenarios
    bool pass = true;
    std::string detail;
    for (int variant = 0; variant < 2; ++variant) {
      Scenario sc = variant == 0 ? sc_shock_exit(200) : sc_band_burgers(32);
      sc.monitor_entropy = false;
      const auto rows =
          oracles::viscosity_limit_study(sc, {0.1, 0.05, 0.025});
      for (std::size_t i = 1; i < rows.size(); ++i)
        pass = pass && rows[i].l1_distance < rows[i - 1].l1_distance;
      detail += sc.name + ": " + num(rows[0].l1_distance) + " " +
                num(rows[1].l1_distance) + " " + num(rows[2].l1_distance) + " ";
    }
    out.push_back(make("limit.viscosity-monotone",
                       "|u_eps - u_fv|_L1(MxT) strictly decreasing in eps",
                       pass ? 0 : 1, 0.0, pass, detail));
  }

  {  // smooth linear scenario: rate >= 0.4 in sqrt(eps)
    Scenario sc = sc_linear_smooth(200);
    sc.monitor_entropy = false;
    const auto rows = oracles::viscosity_limit_study(sc, {0.1, 0.05, 0.025});
    const double rate_sqrt =
        std::log(rows.front().l1_distance / rows.back().l1_distance) /
        std::log(std::sqrt(rows.front().eps / rows.back().eps));
    out.push_back(make("limit.viscosity-rate",
                       "fitted rate in sqrt(eps) >= 0.4, smooth linear",
                       rate_sqrt, 0.4, rate_sqrt >= 0.4));
  }

  return out;
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const std::string& scenario_dir) {
  if (suite == "geometry") return geometry_suite();
  if (suite == "trace") return trace_suite();
  if (suite == "viscous") return viscous_suite();
  if (suite == "entropy") return entropy_suite(scenario_dir);
  if (suite == "contraction") return contraction_suite();
  if (suite == "limit") return limit_suite();
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const char* s :
         {"geometry", "trace", "viscous", "entropy", "contraction", "limit"}) {
      auto part = run_suite(s, scenario_dir);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace mclaw::checks
