#include "mclaw/bv_trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mclaw/kernels.hpp"

namespace mclaw::bv {

namespace {

double grad_norm_g(const StructuredGrid& grid, const GradientField& g,
                   std::size_t c) {
  const double g00 = 1.0 / grid.cell_ginv00()[c];
  double n2 = g00 * g.comp0[c] * g.comp0[c];
  if (grid.dim() == 2) {
    const double g11 = 1.0 / grid.cell_ginv11()[c];
    n2 += g11 * g.comp1[c] * g.comp1[c];
  }
  return std::sqrt(n2);
}

double inner_g(const StructuredGrid& grid, std::size_t c, const Vec2& x,
               double y0, double y1) {
  const double g00 = 1.0 / grid.cell_ginv00()[c];
  double acc = g00 * x[0] * y0;
  if (grid.dim() == 2) {
    const double g11 = 1.0 / grid.cell_ginv11()[c];
    acc += g11 * x[1] * y1;
  }
  return acc;
}

}  // namespace

TVReport total_variation(const StructuredGrid& grid, const CellField& field) {
  require_grid(grid, field);
  TVReport rep;

  const GradientField g = discrete_gradient(grid, field);
  std::vector<double> norms(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    norms[c] = grad_norm_g(grid, g, c);
  rep.tv_gradient = kernels::dot(norms, grid.cell_volumes());

  const auto u = field.values();
  const int n0 = grid.n0(), n1 = grid.n1();
  std::vector<double> jumps;
  jumps.reserve(grid.cell_count() * 2);
  // interior transverse faces
  for (int i0 = 1; i0 < n0; ++i0)
    for (int j = 0; j < n1; ++j)
      jumps.push_back(
          std::fabs(u[grid.index(i0, j)] - u[grid.index(i0 - 1, j)]) *
          grid.face0_measure()[static_cast<std::size_t>(i0) * n1 + j]);
  // azimuthal faces, the periodic wrap face counted once
  if (grid.dim() == 2) {
    for (int i0 = 0; i0 < n0; ++i0) {
      const double measure = grid.dz0();  // g_ss = 1 along the face
      for (int j = 0; j < n1; ++j) {
        const int jm = j == 0 ? n1 - 1 : j - 1;
        jumps.push_back(
            std::fabs(u[grid.index(i0, j)] - u[grid.index(i0, jm)]) * measure);
      }
    }
  }
  rep.tv_jump = kernels::sum(jumps);
  return rep;
}

TraceField extract_trace(const StructuredGrid& grid, const CellField& field) {
  require_grid(grid, field);
  if (grid.n0() < 16)
    throw std::invalid_argument(
        "extract_trace: needs at least 16 transverse cells");
  const double sup = kernels::max_abs(field.values());
  TraceField tf;
  const auto faces = grid.boundary_faces();
  tf.values.resize(faces.size());
  tf.extrapolated.resize(faces.size());
  tf.residual.resize(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& bf = faces[k];
    const int row = bf.side == 0 ? 0 : grid.n0() - 1;
    const double h = grid.transverse_width(row);
    const double rho1 = 4.0 * h, rho2 = 8.0 * h;
    tf.rho1 = rho1;
    tf.rho2 = rho2;
    const double a1 = lebesgue_average(grid, field, bf.center, rho1);
    const double a2 = lebesgue_average(grid, field, bf.center, rho2);
    const double raw = 2.0 * a1 - a2;
    tf.extrapolated[k] = raw;
    tf.values[k] = std::clamp(raw, -sup, sup);
    tf.residual[k] = std::fabs(a1 - a2);
  }
  return tf;
}

SmoothBVSurrogate build_smooth_surrogate(const StructuredGrid& grid,
                                         const CellField& field,
                                         double tol_grad) {
  require_grid(grid, field);
  const GradientField g = discrete_gradient(grid, field);
  SmoothBVSurrogate s;
  s.density.assign(grid.cell_count(), 0.0);
  s.sigma0.assign(grid.cell_count(), 0.0);
  s.sigma1.assign(grid.cell_count(), 0.0);
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const double norm = grad_norm_g(grid, g, c);
    if (norm <= tol_grad) continue;
    s.density[c] = norm * grid.cell_volumes()[c];
    s.sigma0[c] = g.comp0[c] / norm;
    if (grid.dim() == 2) s.sigma1[c] = g.comp1[c] / norm;
  }
  return s;
}

double trace_formula_residual(const StructuredGrid& grid, const CellField& u,
                              const VectorSampler& x_field,
                              SurrogateKind kind) {
  require_grid(grid, u);
  const ChartGeometry& geom = grid.geometry();

  double lhs = 0.0;
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const Point z = grid.cell_center(c);
    lhs += u[c] * geom.div_at(x_field, z).value * grid.cell_volumes()[c];
  }

  double interior = 0.0;
  if (kind == SurrogateKind::smooth_field) {
    const SmoothBVSurrogate s = build_smooth_surrogate(grid, u);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
      if (s.density[c] == 0.0) continue;
      const Vec2 x = x_field(grid.cell_center(c));
      interior += inner_g(grid, c, x, s.sigma0[c], s.sigma1[c]) * s.density[c];
    }
  } else if (kind == SurrogateKind::piecewise_constant) {
    const double jump_tol = 1e-12 * std::max(1.0, kernels::max_abs(u.values()));
    const int n0 = grid.n0(), n1 = grid.n1();
    for (int i0 = 1; i0 < n0; ++i0)
      for (int j = 0; j < n1; ++j) {
        const double jump =
            u[grid.index(i0, j)] - u[grid.index(i0 - 1, j)];
        if (std::fabs(jump) <= jump_tol) continue;
        const Point zf{grid.face0_coord(i0), grid.center1(j)};
        const MetricSample m = geom.metric_at(zf);
        const double measure =
            grid.face0_measure()[static_cast<std::size_t>(i0) * n1 + j];
        // sigma_u is the unit face normal in the direction of increase
        interior += std::sqrt(m.g[0][0]) * x_field(zf)[0] * jump * measure;
      }
    if (grid.dim() == 2) {
      for (int i0 = 0; i0 < n0; ++i0)
        for (int j = 0; j < n1; ++j) {
          const int jm = j == 0 ? n1 - 1 : j - 1;
          const double jump = u[grid.index(i0, j)] - u[grid.index(i0, jm)];
          if (std::fabs(jump) <= jump_tol) continue;
          const double phi_face = grid.center1(j) - 0.5 * grid.dz1();
          const Point zf{grid.center0(i0), phi_face};
          const MetricSample m = geom.metric_at(zf);
          interior += std::sqrt(m.g[1][1]) * x_field(zf)[1] * jump * grid.dz0();
        }
    }
  } else {
    throw std::invalid_argument("trace_formula_residual: unsupported surrogate");
  }

  const TraceField tf = extract_trace(grid, u);
  std::vector<double> bvals(tf.values.size());
  const auto faces = grid.boundary_faces();
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& bf = faces[k];
    const Vec2 x = x_field(bf.center);
    bvals[k] =
        geom.inner_product_at(bf.center, x, bf.normal) * tf.extrapolated[k];
  }
  const double boundary = boundary_integrate(grid, bvals);

  return std::fabs(lhs - (-interior + boundary));
}

double cutoff_pairing(const StructuredGrid& grid, const CellField& u,
                      const VectorSampler& x_field, double delta) {
  require_grid(grid, u);
  const double extent = grid.geometry().transverse_arclength(
      grid.geometry().lo(0), grid.geometry().hi(0));
  double hmax = 0.0;
  for (int i0 = 0; i0 < grid.n0(); ++i0)
    hmax = std::max(hmax, grid.transverse_width(i0));
  if (!(delta > 4.0 * hmax) || !(delta < 0.25 * extent))
    throw std::invalid_argument("cutoff_pairing: delta out of range");

  const CutoffField r = build_cutoff(grid, delta);
  const GradientField gr = discrete_gradient(grid, r.values);
  std::vector<double> integrand(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const Vec2 x = x_field(grid.cell_center(c));
    integrand[c] =
        u[c] * inner_g(grid, c, x, gr.comp0[c],
                       grid.dim() == 2 ? gr.comp1[c] : 0.0);
  }
  return kernels::dot(integrand, grid.cell_volumes());
}

double compose_trace_check(const StructuredGrid& grid, const CellField& u,
                           const std::function<double(double)>& h_fn) {
  require_grid(grid, u);
  CellField hu(grid);
  for (std::size_t c = 0; c < grid.cell_count(); ++c) hu[c] = h_fn(u[c]);
  const TraceField t_hu = extract_trace(grid, hu);
  const TraceField t_u = extract_trace(grid, u);
  double worst = 0.0;
  for (std::size_t k = 0; k < t_u.values.size(); ++k)
    worst = std::max(worst, std::fabs(t_hu.values[k] - h_fn(t_u.values[k])));
  return worst;
}

std::pair<double, double> flux_trace_pairing(const StructuredGrid& grid,
                                             const CellField& u,
                                             const FluxSampler& flux, double t,
                                             const CellField& phi,
                                             double delta) {
  require_grid(grid, u);
  require_grid(grid, phi);
  const CutoffField r = build_cutoff(grid, delta);
  const GradientField gr = discrete_gradient(grid, r.values);
  std::vector<double> integrand(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const Vec2 f = flux(u[c], grid.cell_center(c), t);
    integrand[c] =
        inner_g(grid, c, f, gr.comp0[c], grid.dim() == 2 ? gr.comp1[c] : 0.0) *
        phi[c];
  }
  const double volume_side = kernels::dot(integrand, grid.cell_volumes());

  const TraceField tf = extract_trace(grid, u);
  const auto faces = grid.boundary_faces();
  std::vector<double> bvals(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k) {
    const auto& bf = faces[k];
    const Vec2 f = flux(tf.values[k], bf.center, t);
    bvals[k] = grid.geometry().inner_product_at(bf.center, f, bf.normal) *
               phi[bf.cell];
  }
  const double boundary_side = boundary_integrate(grid, bvals);
  return {volume_side, boundary_side};
}

double composed_tv_bounded(const StructuredGrid& grid, const CellField& u,
                           const std::function<double(double, Point)>& f) {
  require_grid(grid, u);
  CellField composed(grid);
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    composed[c] = f(u[c], grid.cell_center(c));
  return total_variation(grid, composed).tv_jump;
}

}  // namespace mclaw::bv
