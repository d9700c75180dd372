#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "mclaw/grid.hpp"

// Discrete total variation, boundary traces by shrinking ball averages, and
// the integration-by-parts identities that tie them together.
//
// Two TV functionals are deliberately kept side by side: tv_gradient
// (quadrature of |grad u|_g) matches smooth-field identities, tv_jump (face
// jumps weighted by face measure) is what monotone schemes control. They
// agree for resolved monotone 1D profiles; in 2D the jump form is an
// anisotropic surrogate (factor <= sqrt(2)).

namespace mclaw::bv {

struct TVReport {
  double tv_gradient = 0.0;
  double tv_jump = 0.0;
};

// Trace estimate per boundary face. `values` is the exported trace: the
// linear extrapolation of the half-ball averages at radii (4h, 8h) clamped
// to the field's sup norm, so |Tu| <= |u|_inf holds for arbitrary cell data.
// `extrapolated` keeps the unclamped second-order extrapolant; the
// integration-by-parts residual quadrature uses it, because a field whose
// maximum sits on the boundary has a true trace above every cell value and
// the clamp would cap the identity at first order.
struct TraceField {
  std::vector<double> values;        // clamped trace, grid face order
  std::vector<double> extrapolated;  // raw 2*A(4h) - A(8h)
  std::vector<double> residual;      // |A(4h) - A(8h)| per face
  double rho1 = 0.0;
  double rho2 = 0.0;
};

// Smooth-field stand-in for the measure |Du| and its direction sigma_u:
// density carries the mass |grad u|_g * vol per cell, sigma the unit
// gradient direction where |grad u|_g exceeds tol_grad (zero elsewhere).
struct SmoothBVSurrogate {
  std::vector<double> density;
  std::vector<double> sigma0, sigma1;
  static constexpr double kTolGrad = 1e-10;
};

enum class SurrogateKind { smooth_field, piecewise_constant };

using FluxSampler = std::function<Vec2(double u, Point z, double t)>;

TVReport total_variation(const StructuredGrid& grid, const CellField& field);

TraceField extract_trace(const StructuredGrid& grid, const CellField& field);

SmoothBVSurrogate build_smooth_surrogate(const StructuredGrid& grid,
                                         const CellField& field,
                                         double tol_grad = SmoothBVSurrogate::kTolGrad);

// | integral(u div X) - ( -sum <X,sigma_u> |Du| + boundary <X,N> Tu ) |
double trace_formula_residual(const StructuredGrid& grid, const CellField& u,
                              const VectorSampler& x_field, SurrogateKind kind);

// integral of u <grad R_delta, X>_g over M; converges to the boundary
// pairing of Tu with <X,N> as delta shrinks.
double cutoff_pairing(const StructuredGrid& grid, const CellField& u,
                      const VectorSampler& x_field, double delta);

// max over boundary faces of |T[h(u)] - h(Tu)|
double compose_trace_check(const StructuredGrid& grid, const CellField& u,
                           const std::function<double(double)>& h_fn);

// (volume side, boundary side) of the flux pairing with the cutoff gradient
std::pair<double, double> flux_trace_pairing(const StructuredGrid& grid,
                                             const CellField& u,
                                             const FluxSampler& flux, double t,
                                             const CellField& phi, double delta);

// tv_jump of x -> F(u(x), x)
double composed_tv_bounded(const StructuredGrid& grid, const CellField& u,
                           const std::function<double(double, Point)>& f);

}  // namespace mclaw::bv
