#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mclaw/grid.hpp"

// Flux families f(u,x,t) = h(u) * X(x,t) with analytically divergence-free
// direction fields, mollified initial data, and scenario assembly.
//
// The direction field is X = (a(t)/sqrt|g|, c) in chart components (1D:
// a(t)/w(x)), which makes div_g f vanish identically for frozen u: the
// conservative transverse coefficient sqrt|g| X^0 = a(t) is constant over
// the mesh and the azimuthal coefficient sqrt|g| X^1 depends only on the
// transverse coordinate. The finite-volume divergence of a constant state
// telescopes to zero exactly, which is what makes the discrete maximum
// principle and the cell entropy inequality hold to rounding.

namespace mclaw {

enum class HKind { linear, burgers };
enum class AKind { constant, sine };

struct FluxFamily {
  HKind h_kind = HKind::linear;
  AKind a_kind = AKind::constant;
  double a_value = 1.0;
  double a_period = 1.0;  // a(t) = a_value * sin(2 pi t / a_period)
  double c_value = 0.0;   // azimuthal chart component (2D kinds)

  double h(double u) const {
    return h_kind == HKind::linear ? u : 0.5 * u * u;
  }
  double dh(double u) const { return h_kind == HKind::linear ? 1.0 : u; }
  double sup_dh(double lo, double hi) const;
  double a(double t) const;
  double c(double) const { return c_value; }
};

Vec2 flux_eval(const FluxFamily& f, const ChartGeometry& geom, double u,
               Point z, double t);
Vec2 dflux_eval(const FluxFamily& f, const ChartGeometry& geom, double u,
                Point z, double t);

// max |div_g f(u_frozen, ., t)| over a deterministic interior sample cloud
double verify_div_free(const FluxFamily& f, const ChartGeometry& geom, double t,
                       double u_frozen, int samples = 1000,
                       double fd_step = ChartGeometry::kDefaultFdStep);

struct InitialSpec {
  enum class Profile { constant, step, sine, bump, cos_transverse, csv };
  Profile profile = Profile::constant;
  double value = 0.0;                    // constant
  double left = 1.0, right = 0.0;        // step
  double jump_at = 0.5;                  // step position (transverse coord)
  double amplitude = 1.0;                // sine / bump
  int mode = 1;                          // sine transverse half-waves
  double center = 0.5, width = 0.25;     // bump
  int azimuthal_mode = 0;                // optional cos(m phi) modulation
  double azimuthal_weight = 0.0;
  std::string csv_path;

  // analytic profile value at a chart point; csv profiles have no pointwise
  // form and throw
  double evaluate(const ChartGeometry& geom, Point z) const;
  CellField sample(const StructuredGrid& grid) const;
};

// Mollification kernel: metric-weighted Gaussian of width sigma = sqrt(eps)
// truncated at 3 sigma and renormalized cell by cell, then clamped to the
// data range so the sup bound is exact. Near the boundary the window
// shrinks symmetrically to the wall distance, which keeps boundary values
// of compatible data intact instead of biasing them by O(sigma). The
// sqrt(eps) width keeps eps * |u0_eps|_{H^{2,1}} bounded by the total
// variation of u0 with one constant across the eps list.
struct MollifierSpec {
  double truncation = 3.0;
  static double width(double eps);  // sqrt(eps)
};

CellField mollify_initial(const StructuredGrid& grid, const CellField& u0,
                          double eps, const MollifierSpec& spec = {});

struct Scenario {
  std::string name;
  ChartGeometry geom = ChartGeometry::weighted_interval(0.0, 1.0);
  FluxFamily flux;
  InitialSpec initial;
  double horizon = 1.0;
  std::vector<int> resolution;
  double cfl = 0.45;
  double viscosity = 0.0;  // 0 = hyperbolic
  double cadence = 0.25;   // output interval
  MollifierSpec mollifier;
  int kruzkov_levels = 21;
  bool monitor_entropy = true;

  StructuredGrid make_grid() const;
  StructuredGrid make_grid(int scale_numerator, int scale_denominator) const;
};

// cfl / (sum over axes of lambda_j / dz_j + parabolic terms); the advective
// and diffusive bounds are kept separate and the smaller one wins. An
// advective-free, inviscid scenario returns the full horizon.
double stable_dt(const Scenario& sc, const StructuredGrid& grid, double t,
                 std::pair<double, double> u_range);

}  // namespace mclaw
