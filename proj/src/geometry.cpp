#include "mclaw/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mclaw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;

double wrap_angle(double phi) {
  double p = std::fmod(phi, kTwoPi);
  if (p < 0.0) p += kTwoPi;
  return p;
}

}  // namespace

ChartGeometry ChartGeometry::weighted_interval(double x_lo, double x_hi,
                                               double beta) {
  if (!(x_lo < x_hi)) throw std::invalid_argument("interval: x_lo < x_hi required");
  if (beta < 0.0) throw std::invalid_argument("interval: beta >= 0 required");
  if (1.0 + beta * x_lo <= 0.0 || 1.0 + beta * x_hi <= 0.0)
    throw std::invalid_argument("interval: weight must stay positive");
  ChartGeometry g;
  g.kind_ = GeometryKind::weighted_interval;
  g.dim_ = 1;
  g.lo0_ = x_lo;
  g.hi0_ = x_hi;
  g.beta_ = beta;
  return g;
}

ChartGeometry ChartGeometry::spherical_band(double theta0, double theta1) {
  if (!(0.0 < theta0 && theta0 < theta1 && theta1 < std::numbers::pi))
    throw std::invalid_argument("band: need 0 < theta0 < theta1 < pi");
  ChartGeometry g;
  g.kind_ = GeometryKind::spherical_band;
  g.dim_ = 2;
  g.lo0_ = theta0;
  g.hi0_ = theta1;
  return g;
}

ChartGeometry ChartGeometry::surface_of_revolution(double s_lo, double s_hi,
                                                   double alpha) {
  if (!(s_lo < s_hi)) throw std::invalid_argument("revolution: s_lo < s_hi required");
  if (std::fabs(alpha) > 0.5)
    throw std::invalid_argument("revolution: |alpha| <= 0.5 required");
  ChartGeometry g;
  g.kind_ = GeometryKind::surface_of_revolution;
  g.dim_ = 2;
  g.lo0_ = s_lo;
  g.hi0_ = s_hi;
  g.alpha_ = alpha;
  return g;
}

double ChartGeometry::hi(int axis) const {
  if (axis == 0) return hi0_;
  return kTwoPi;
}

SideTag ChartGeometry::side_tag(int axis) const {
  return axis == 0 ? SideTag::boundary : SideTag::periodic;
}

bool ChartGeometry::contains(Point z, double tol) const {
  return z.z0 >= lo0_ - tol && z.z0 <= hi0_ + tol;
}

Point ChartGeometry::wrap(Point z) const {
  if (dim_ == 2) z.z1 = wrap_angle(z.z1);
  return z;
}

void ChartGeometry::require_inside(Point z) const {
  if (!contains(z, kBoundaryTol))
    throw std::domain_error("point outside chart domain");
}

double ChartGeometry::weight(double x) const { return 1.0 + beta_ * x; }

double ChartGeometry::profile_r(double s) const {
  const double len = hi0_ - lo0_;
  return 1.0 + alpha_ * std::sin(std::numbers::pi * s / len);
}

double ChartGeometry::profile_dr(double s) const {
  const double len = hi0_ - lo0_;
  const double k = std::numbers::pi / len;
  return alpha_ * k * std::cos(k * s);
}

double ChartGeometry::profile_ddr(double s) const {
  const double len = hi0_ - lo0_;
  const double k = std::numbers::pi / len;
  return -alpha_ * k * k * std::sin(k * s);
}

double ChartGeometry::gauss_curvature(Point z) const {
  switch (kind_) {
    case GeometryKind::weighted_interval:
      return 0.0;
    case GeometryKind::spherical_band:
      return 1.0;
    case GeometryKind::surface_of_revolution:
      return -profile_ddr(z.z0) / profile_r(z.z0);
  }
  return 0.0;
}

MetricSample ChartGeometry::metric_at(Point z) const {
  require_inside(z);
  MetricSample m;
  m.dim = dim_;
  switch (kind_) {
    case GeometryKind::weighted_interval: {
      const double w = weight(z.z0);
      m.g[0][0] = w * w;
      m.g_inv[0][0] = 1.0 / (w * w);
      m.sqrt_det = w;
      m.christoffel[0][0][0] = beta_ / w;  // w'/w
      break;
    }
    case GeometryKind::spherical_band: {
      const double s = std::sin(z.z0);
      const double c = std::cos(z.z0);
      m.g[0][0] = 1.0;
      m.g[1][1] = s * s;
      m.g_inv[0][0] = 1.0;
      m.g_inv[1][1] = 1.0 / (s * s);
      m.sqrt_det = s;
      m.christoffel[0][1][1] = -s * c;         // Gamma^th_phiphi
      m.christoffel[1][0][1] = c / s;          // Gamma^phi_thphi
      m.christoffel[1][1][0] = c / s;
      // unit sphere: Ric = g
      m.ricci[0][0] = 1.0;
      m.ricci[1][1] = s * s;
      break;
    }
    case GeometryKind::surface_of_revolution: {
      const double r = profile_r(z.z0);
      const double dr = profile_dr(z.z0);
      const double kcurv = gauss_curvature(z);
      m.g[0][0] = 1.0;
      m.g[1][1] = r * r;
      m.g_inv[0][0] = 1.0;
      m.g_inv[1][1] = 1.0 / (r * r);
      m.sqrt_det = r;
      m.christoffel[0][1][1] = -r * dr;  // Gamma^s_phiphi
      m.christoffel[1][0][1] = dr / r;   // Gamma^phi_sphi
      m.christoffel[1][1][0] = dr / r;
      m.ricci[0][0] = kcurv;
      m.ricci[1][1] = kcurv * r * r;
      break;
    }
  }
  return m;
}

double ChartGeometry::inner_product_at(Point z, std::span<const double> x,
                                       std::span<const double> y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw std::invalid_argument("inner_product_at: dimension mismatch");
  Vec2 xv{0.0, 0.0}, yv{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) {
    xv[i] = x[i];
    yv[i] = y[i];
  }
  return inner_product_at(z, xv, yv);
}

double ChartGeometry::inner_product_at(Point z, const Vec2& x,
                                       const Vec2& y) const {
  const MetricSample m = metric_at(z);
  double acc = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) acc += m.g[i][j] * x[i] * y[j];
  return acc;
}

double ChartGeometry::norm_g(Point z, const Vec2& x) const {
  return std::sqrt(inner_product_at(z, x, x));
}

Vec2 ChartGeometry::unit_outer_normal(Point z) const {
  require_inside(z);
  const bool at_lo = std::fabs(z.z0 - lo0_) <= kBoundaryTol;
  const bool at_hi = std::fabs(z.z0 - hi0_) <= kBoundaryTol;
  if (!at_lo && !at_hi)
    throw std::invalid_argument(
        "unit_outer_normal: point not on a boundary side");
  const double sign = at_hi ? 1.0 : -1.0;
  if (kind_ == GeometryKind::weighted_interval)
    return {sign / weight(z.z0), 0.0};
  return {sign, 0.0};  // g_ss = 1 for band and revolution
}

// ---------------------------------------------------------------------------
// Finite differences of samplers
// ---------------------------------------------------------------------------
namespace {

// Derivative of f along `axis` at z, honoring the domain: centered inside,
// second-order one-sided when the stencil would cross a boundary side,
// periodic wrap on the azimuthal axis.
double d_axis(const ChartGeometry& geom, const std::function<double(Point)>& f,
              Point z, int axis, double h, bool* one_sided) {
  auto shifted = [&](double step) {
    Point p = z;
    if (axis == 0)
      p.z0 += step;
    else
      p.z1 += step;
    return geom.wrap(p);
  };
  if (axis == 1) {  // periodic
    return (f(shifted(h)) - f(shifted(-h))) / (2.0 * h);
  }
  const double lo = geom.lo(0), hi = geom.hi(0);
  if (z.z0 + h > hi + 1e-15) {
    if (one_sided) *one_sided = true;
    return (3.0 * f(z) - 4.0 * f(shifted(-h)) + f(shifted(-2.0 * h))) /
           (2.0 * h);
  }
  if (z.z0 - h < lo - 1e-15) {
    if (one_sided) *one_sided = true;
    return (-3.0 * f(z) + 4.0 * f(shifted(h)) - f(shifted(2.0 * h))) /
           (2.0 * h);
  }
  return (f(shifted(h)) - f(shifted(-h))) / (2.0 * h);
}

}  // namespace

DivResult ChartGeometry::div_at(const VectorSampler& x_field, Point z,
                                double fd_step) const {
  require_inside(z);
  if (extent(0) < 4.0 * fd_step)
    throw std::invalid_argument("div_at: fd_step too large for the domain");
  DivResult res;
  const double sd = metric_at(z).sqrt_det;
  for (int i = 0; i < dim_; ++i) {
    auto flux_i = [&](Point p) {
      return x_field(p)[static_cast<std::size_t>(i)] * metric_at(p).sqrt_det;
    };
    res.value += d_axis(*this, flux_i, z, i, fd_step, &res.one_sided);
  }
  res.value /= sd;
  return res;
}

DivResult ChartGeometry::laplace_at(const ScalarSampler& u, Point z,
                                    double fd_step) const {
  auto grad = [&](Point p) -> Vec2 {
    const MetricSample m = metric_at(p);
    Vec2 omega{0.0, 0.0};
    for (int j = 0; j < dim_; ++j)
      omega[j] = d_axis(*this, u, p, j, fd_step, nullptr);
    Vec2 up{0.0, 0.0};
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) up[i] += m.g_inv[i][j] * omega[j];
    return up;
  };
  return div_at(grad, z, fd_step);
}

double ChartGeometry::commutator_residual_at(const ScalarSampler& u, Point z,
                                             double fd_step) const {
  require_inside(z);
  const double h = fd_step;

  // covector du
  auto omega = [&](Point p, int i) {
    return d_axis(*this, u, p, i, h, nullptr);
  };
  // T_ji = grad(du): partial_j omega_i - Gamma^k_ji omega_k
  auto cov_T = [&](Point p, int j, int i) {
    const MetricSample m = metric_at(p);
    auto om_i = [&](Point q) { return omega(q, i); };
    double t = d_axis(*this, om_i, p, j, h, nullptr);
    for (int k = 0; k < dim_; ++k) t -= m.christoffel[k][j][i] * omega(p, k);
    return t;
  };
  // scalar Laplacian via the same operator chain as laplace_at
  auto lap_scalar = [&](Point p) {
    const double sd = metric_at(p).sqrt_det;
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) {
      auto flux_i = [&](Point q) {
        const MetricSample mq = metric_at(q);
        double up_i = 0.0;
        for (int j = 0; j < dim_; ++j) up_i += mq.g_inv[i][j] * omega(q, j);
        return up_i * mq.sqrt_det;
      };
      acc += d_axis(*this, flux_i, p, i, h, nullptr);
    }
    return acc / sd;
  };

  const MetricSample m = metric_at(z);
  double tval[2][2];  // T_ji at z
  for (int j = 0; j < dim_; ++j)
    for (int i = 0; i < dim_; ++i) tval[j][i] = cov_T(z, j, i);

  Vec2 resid{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) {
    // Bochner Laplacian of du: g^{jl} (partial_j T_li - Gamma^m_jl T_mi
    //                                   - Gamma^m_ji T_lm)
    double lap_omega = 0.0;
    for (int j = 0; j < dim_; ++j)
      for (int l = 0; l < dim_; ++l) {
        if (m.g_inv[j][l] == 0.0) continue;
        auto t_li = [&](Point q) { return cov_T(q, l, i); };
        double term = d_axis(*this, t_li, z, j, h, nullptr);
        for (int mm = 0; mm < dim_; ++mm) {
          term -= m.christoffel[mm][j][l] * tval[mm][i];
          term -= m.christoffel[mm][j][i] * tval[l][mm];
        }
        lap_omega += m.g_inv[j][l] * term;
      }
    const double grad_lap = d_axis(*this, lap_scalar, z, i, h, nullptr);
    double ric_term = 0.0;
    for (int k = 0; k < dim_; ++k) {
      double up_k = 0.0;
      for (int j = 0; j < dim_; ++j) up_k += m.g_inv[k][j] * omega(z, j);
      ric_term += m.ricci[i][k] * up_k;
    }
    resid[i] = lap_omega - grad_lap - ric_term;
  }
  double norm2 = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) norm2 += m.g_inv[i][j] * resid[i] * resid[j];
  return std::sqrt(norm2);
}

double ChartGeometry::transverse_arclength(double t0, double t1) const {
  if (kind_ == GeometryKind::weighted_interval)
    return (t1 - t0) + 0.5 * beta_ * (t1 * t1 - t0 * t0);
  return t1 - t0;  // g_ss = 1
}

double ChartGeometry::dist_to_boundary(Point z) const {
  const double d_lo = transverse_arclength(lo0_, z.z0);
  const double d_hi = transverse_arclength(z.z0, hi0_);
  return d_lo < d_hi ? d_lo : d_hi;
}

std::string ChartGeometry::describe() const {
  switch (kind_) {
    case GeometryKind::weighted_interval:
      return "weighted-interval";
    case GeometryKind::spherical_band:
      return "spherical-band";
    case GeometryKind::surface_of_revolution:
      return "surface-of-revolution";
  }
  return "?";
}

}  // namespace mclaw
