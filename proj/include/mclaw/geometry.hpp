#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>

// Pointwise Riemannian structure of the single-chart geometries with
// boundary that this code supports:
//
//   weighted-interval       [x_lo, x_hi],  g = w(x)^2 dx^2,  w = 1 + beta*x
//   spherical-band          [th0, th1] x [0,2pi),  g = dth^2 + sin^2(th) dphi^2
//   surface-of-revolution   [s_lo, s_hi] x [0,2pi), g = ds^2 + r^2(s) dphi^2,
//                           r(s) = 1 + alpha*sin(pi*s/L)
//
// Conventions: axis 0 is the transverse coordinate (x, theta, s) and for the
// 2D kinds has unit metric coefficient, so coordinate distance to the
// boundary equals Riemannian distance. Axis 1 is the periodic azimuthal
// angle. The unit outer normal always points out of the domain and is
// normalised in g; the transverse sides are tagged boundary, azimuthal sides
// periodic.

namespace mclaw {

enum class GeometryKind { weighted_interval, spherical_band, surface_of_revolution };

enum class SideTag { boundary, periodic };

struct Point {
  double z0 = 0.0;
  double z1 = 0.0;
};

using Vec2 = std::array<double, 2>;

using ScalarSampler = std::function<double(Point)>;
using VectorSampler = std::function<Vec2(Point)>;

// Metric data at one point. All built-in metrics are diagonal; the full 2x2
// layout is kept so the formulas read like their index form.
struct MetricSample {
  int dim = 1;
  double g[2][2] = {};
  double g_inv[2][2] = {};
  double sqrt_det = 0.0;
  double christoffel[2][2][2] = {};  // christoffel[k][i][j] = Gamma^k_ij
  double ricci[2][2] = {};
};

struct DivResult {
  double value = 0.0;
  bool one_sided = false;  // a stencil hit a boundary side and fell back
};

class ChartGeometry {
 public:
  static ChartGeometry weighted_interval(double x_lo, double x_hi,
                                         double beta = 0.0);
  static ChartGeometry spherical_band(double theta0, double theta1);
  static ChartGeometry surface_of_revolution(double s_lo, double s_hi,
                                             double alpha = 0.0);

  GeometryKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double lo(int axis) const { return axis == 0 ? lo0_ : 0.0; }
  double hi(int axis) const;
  double extent(int axis) const { return hi(axis) - lo(axis); }
  SideTag side_tag(int axis) const;  // both sides of an axis share the tag
  bool contains(Point z, double tol = 0.0) const;
  Point wrap(Point z) const;  // reduce the periodic coordinate mod 2pi

  MetricSample metric_at(Point z) const;
  double inner_product_at(Point z, std::span<const double> x,
                          std::span<const double> y) const;
  double inner_product_at(Point z, const Vec2& x, const Vec2& y) const;
  double norm_g(Point z, const Vec2& x) const;

  // z must lie on a boundary side (tolerance 1e-12 in the transverse
  // coordinate); querying a periodic side throws std::invalid_argument.
  Vec2 unit_outer_normal(Point z) const;

  // (1/sqrt|g|) d_i(X^i sqrt|g|) by centered differences of step fd_step;
  // one-sided second-order stencils next to boundary sides.
  DivResult div_at(const VectorSampler& x_field, Point z,
                   double fd_step = kDefaultFdStep) const;
  // div_g(grad_g u) through the same difference operators.
  DivResult laplace_at(const ScalarSampler& u, Point z,
                       double fd_step = kDefaultFdStep) const;
  // | Delta_g(du) - d(Delta_g u) - Ric(grad u, .) |_g, nested differences.
  double commutator_residual_at(const ScalarSampler& u, Point z,
                                double fd_step = kDefaultFdStep) const;

  // Riemannian distance from z to the boundary (exact along the transverse
  // coordinate for every kind).
  double dist_to_boundary(Point z) const;
  // Metric length of the transverse segment [t0, t1].
  double transverse_arclength(double t0, double t1) const;
  double gauss_curvature(Point z) const;

  // Kind-specific coefficient access.
  double weight(double x) const;     // weighted-interval w(x)
  double profile_r(double s) const;  // surface-of-revolution r(s)
  double profile_dr(double s) const;
  double profile_ddr(double s) const;
  double beta() const { return beta_; }
  double alpha() const { return alpha_; }

  std::string describe() const;

  static constexpr double kDefaultFdStep = 1e-3;

 private:
  ChartGeometry() = default;
  void require_inside(Point z) const;

  GeometryKind kind_ = GeometryKind::weighted_interval;
  int dim_ = 1;
  double lo0_ = 0.0, hi0_ = 1.0;
  double beta_ = 0.0;   // weighted-interval
  double alpha_ = 0.0;  // surface-of-revolution
};

}  // namespace mclaw
