#include "mclaw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mclaw/kernels.hpp"

namespace mclaw {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CellField::CellField(const StructuredGrid& grid, double value)
    : grid_(&grid), v_(grid.cell_count(), value) {}

void require_grid(const StructuredGrid& grid, const CellField& f) {
  if (&f.grid() != &grid)
    throw std::invalid_argument("field does not belong to this grid");
}

void require_same_grid(const CellField& a, const CellField& b) {
  if (&a.grid() != &b.grid())
    throw std::invalid_argument("fields live on different grids");
}

StructuredGrid::StructuredGrid(const ChartGeometry& geom, int n0, int n1)
    : geom_(geom), n0_(n0), n1_(geom.dim() == 2 ? n1 : 1) {
  if (n0_ < 4 || (geom_.dim() == 2 && n1_ < 4))
    throw std::invalid_argument("build_grid: resolution must be >= 4 per axis");
  cells_ = static_cast<std::size_t>(n0_) * n1_;
  dz0_ = (geom_.hi(0) - geom_.lo(0)) / n0_;
  dz1_ = geom_.dim() == 2 ? kTwoPi / n1_ : 1.0;

  c0_.resize(n0_);
  for (int i = 0; i < n0_; ++i) c0_[i] = geom_.lo(0) + (i + 0.5) * dz0_;
  c1_.resize(n1_);
  for (int j = 0; j < n1_; ++j)
    c1_[j] = geom_.dim() == 2 ? (j + 0.5) * dz1_ : 0.0;

  cell_volume_.resize(cells_);
  inv_cell_volume_.resize(cells_);
  cell_sqrtg_.resize(cells_);
  cell_ginv00_.resize(cells_);
  cell_ginv11_.resize(cells_);
  dist_boundary_.resize(cells_);
  for (int i0 = 0; i0 < n0_; ++i0) {
    const MetricSample m = geom_.metric_at({c0_[i0], c1_[0]});
    const double row_dist = geom_.dist_to_boundary({c0_[i0], 0.0});
    for (int j = 0; j < n1_; ++j) {
      const std::size_t c = index(i0, j);
      cell_sqrtg_[c] = m.sqrt_det;
      cell_ginv00_[c] = m.g_inv[0][0];
      cell_ginv11_[c] = geom_.dim() == 2 ? m.g_inv[1][1] : 0.0;
      cell_volume_[c] = m.sqrt_det * dz0_ * dz1_;
      inv_cell_volume_[c] = 1.0 / cell_volume_[c];
      dist_boundary_[c] = row_dist;
    }
  }
  total_volume_ = kernels::sum(cell_volume_);

  // axis-0 faces
  const std::size_t nf0 = static_cast<std::size_t>(n0_ + 1) * n1_;
  face0_sqrtg_.resize(nf0);
  face0_measure_.resize(nf0);
  face0_diff_coef_.resize(nf0);
  for (int i0f = 0; i0f <= n0_; ++i0f) {
    const double t = face0_coord(i0f);
    const MetricSample m = geom_.metric_at({t, c1_[0]});
    double measure = 1.0;  // counting measure at the two endpoints in 1D
    if (geom_.dim() == 2) measure = std::sqrt(m.g[1][1]) * dz1_;
    const double dcoef = m.sqrt_det * m.g_inv[0][0] * dz1_ / dz0_;
    for (int j = 0; j < n1_; ++j) {
      const std::size_t f = static_cast<std::size_t>(i0f) * n1_ + j;
      face0_sqrtg_[f] = m.sqrt_det;
      face0_measure_[f] = measure;
      face0_diff_coef_[f] = dcoef;
    }
  }

  // axis-1 faces (2D): coefficients depend on the row only
  if (geom_.dim() == 2) {
    face1_sqrtg_row_.resize(n0_);
    face1_diff_coef_row_.resize(n0_);
    for (int i0 = 0; i0 < n0_; ++i0) {
      const MetricSample m = geom_.metric_at({c0_[i0], 0.0});
      face1_sqrtg_row_[i0] = m.sqrt_det;
      face1_diff_coef_row_[i0] = m.sqrt_det * m.g_inv[1][1] * dz0_ / dz1_;
    }
  }

  // boundary faces: lo side first, then hi side
  for (int side = 0; side < 2; ++side) {
    const int i0f = side == 0 ? 0 : n0_;
    const double t = face0_coord(i0f);
    for (int j = 0; j < n1_; ++j) {
      BoundaryFace bf;
      bf.side = side;
      bf.j = j;
      bf.cell = index(side == 0 ? 0 : n0_ - 1, j);
      bf.center = {t, c1_[j]};
      bf.normal = geom_.unit_outer_normal(bf.center);
      bf.measure = face0_measure_[static_cast<std::size_t>(i0f) * n1_ + j];
      bfaces_.push_back(bf);
      bmeasures_.push_back(bf.measure);
    }
  }

  min_width_ = transverse_width(0);
  max_width_ = min_width_;
  for (int i0 = 0; i0 < n0_; ++i0) {
    double w = transverse_width(i0);
    min_width_ = std::min(min_width_, w);
    max_width_ = std::max(max_width_, w);
    if (geom_.dim() == 2) {
      w = azimuthal_width(i0);
      min_width_ = std::min(min_width_, w);
      max_width_ = std::max(max_width_, w);
    }
  }
}

double StructuredGrid::transverse_width(int i0) const {
  return geom_.transverse_arclength(face0_coord(i0), face0_coord(i0 + 1));
}

double StructuredGrid::azimuthal_width(int i0) const {
  const MetricSample m = geom_.metric_at({c0_[i0], 0.0});
  return std::sqrt(m.g[1][1]) * dz1_;
}

double StructuredGrid::metric_offset(Point x0, Point p) const {
  const double dt = geom_.transverse_arclength(std::min(x0.z0, p.z0),
                                               std::max(x0.z0, p.z0));
  if (geom_.dim() == 1) return dt;
  double dphi = std::fabs(x0.z1 - p.z1);
  dphi = std::min(dphi, kTwoPi - dphi);
  const MetricSample m = geom_.metric_at({x0.z0, 0.0});
  const double da = std::sqrt(m.g[1][1]) * dphi;
  return std::hypot(dt, da);
}

StructuredGrid build_grid(const ChartGeometry& geom,
                          std::span<const int> resolution) {
  if (resolution.empty() || static_cast<int>(resolution.size()) != geom.dim())
    throw std::invalid_argument("build_grid: one resolution entry per axis");
  return geom.dim() == 2 ? StructuredGrid(geom, resolution[0], resolution[1])
                         : StructuredGrid(geom, resolution[0]);
}

double integrate(const StructuredGrid& grid, const CellField& field) {
  require_grid(grid, field);
  return kernels::dot(field.values(), grid.cell_volumes());
}

double boundary_integrate(const StructuredGrid& grid,
                          std::span<const double> face_values) {
  if (face_values.size() != grid.boundary_faces().size())
    throw std::invalid_argument("boundary_integrate: one value per boundary face");
  return kernels::dot(face_values, grid.boundary_measures());
}

GradientField discrete_gradient(const StructuredGrid& grid,
                                const CellField& field) {
  require_grid(grid, field);
  const int n0 = grid.n0(), n1 = grid.n1();
  const auto u = field.values();
  GradientField g;
  g.comp0.resize(grid.cell_count());
  if (grid.dim() == 2) g.comp1.resize(grid.cell_count());
  const double dz0 = grid.dz0(), dz1 = grid.dz1();
  for (int i0 = 0; i0 < n0; ++i0) {
    for (int j = 0; j < n1; ++j) {
      const std::size_t c = grid.index(i0, j);
      double d0;
      if (i0 == 0)
        d0 = (u[grid.index(1, j)] - u[c]) / dz0;
      else if (i0 == n0 - 1)
        d0 = (u[c] - u[grid.index(n0 - 2, j)]) / dz0;
      else
        d0 = (u[grid.index(i0 + 1, j)] - u[grid.index(i0 - 1, j)]) / (2.0 * dz0);
      g.comp0[c] = grid.cell_ginv00()[c] * d0;
      if (grid.dim() == 2) {
        const int jp = j + 1 == n1 ? 0 : j + 1;
        const int jm = j == 0 ? n1 - 1 : j - 1;
        const double d1 =
            (u[grid.index(i0, jp)] - u[grid.index(i0, jm)]) / (2.0 * dz1);
        g.comp1[c] = grid.cell_ginv11()[c] * d1;
      }
    }
  }
  return g;
}

CellField discrete_laplace(const StructuredGrid& grid, const CellField& field,
                           BoundaryMode mode) {
  require_grid(grid, field);
  if (mode != BoundaryMode::dirichlet_zero)
    throw std::invalid_argument("discrete_laplace: unsupported boundary mode");
  const int n0 = grid.n0(), n1 = grid.n1();
  const auto u = field.values();
  const auto dcoef = grid.face0_diff_coef();
  CellField out(grid);
  std::vector<double> f0(static_cast<std::size_t>(n0 + 1) * n1);

  // transverse faces; Dirichlet ghost is the odd reflection, so the face
  // value is exactly zero and the difference doubles.
  {
    std::span<double> f0s(f0);
    const std::size_t nrow = static_cast<std::size_t>(n1);
    const std::size_t inner = static_cast<std::size_t>(n0 - 1) * n1;
    kernels::face_diff(f0s.subspan(nrow, inner), u.subspan(0, inner),
                       u.subspan(nrow, inner),
                       dcoef.subspan(nrow, inner));
    for (int j = 0; j < n1; ++j) {
      f0[j] = dcoef[j] * (2.0 * u[j]);
      const std::size_t top = static_cast<std::size_t>(n0) * n1 + j;
      const std::size_t c = grid.index(n0 - 1, j);
      f0[top] = dcoef[top] * (-2.0 * u[c]);
    }
  }
  std::span<double> acc = out.values();
  {
    std::span<const double> f0s(f0);
    const std::size_t n = grid.cell_count();
    kernels::accum_diff(acc, f0s.subspan(n1, n), f0s.subspan(0, n));
  }

  if (grid.dim() == 2) {
    std::vector<double> f1(static_cast<std::size_t>(n1) + 1);
    for (int i0 = 0; i0 < n0; ++i0) {
      const double coef = grid.face1_diff_coef_row()[i0];
      const std::size_t row = grid.index(i0, 0);
      // face j between cells j-1 and j; wrap face duplicated at the end
      f1[0] = coef * (u[row] - u[row + n1 - 1]);
      for (int j = 1; j < n1; ++j) f1[j] = coef * (u[row + j] - u[row + j - 1]);
      f1[n1] = f1[0];
      std::span<const double> f1s(f1);
      kernels::accum_diff(acc.subspan(row, n1), f1s.subspan(1, n1),
                          f1s.subspan(0, n1));
    }
  }

  // divide by cell volume
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    acc[c] *= grid.inv_cell_volumes()[c];
  return out;
}

double smoothstep_quintic(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  return 1.0 - (10.0 * t * t * t - 15.0 * t * t * t * t +
                6.0 * t * t * t * t * t);
}

CutoffField build_cutoff(const StructuredGrid& grid, double delta) {
  const double half_extent =
      0.5 * grid.geometry().transverse_arclength(grid.geometry().lo(0),
                                                 grid.geometry().hi(0));
  if (!(delta > 0.0) || delta >= half_extent)
    throw std::invalid_argument("build_cutoff: delta out of range");
  CutoffField cf{CellField(grid), delta};
  const auto dist = grid.dist_to_boundary();
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    cf.values[c] = smoothstep_quintic(2.0 * dist[c] / delta - 1.0);
  return cf;
}

namespace {
// Chord moments of the disk of radius rho in the flattened chart:
// M0 = int 2*sqrt(rho^2-t^2) dt, M1 = int t * 2*sqrt(rho^2-t^2) dt.
double chord_m0(double t, double rho) {
  const double x = std::clamp(t / rho, -1.0, 1.0);
  return t * std::sqrt(std::max(0.0, rho * rho - t * t)) +
         rho * rho * std::asin(x);
}
double chord_m1(double t, double rho) {
  const double r2 = std::max(0.0, rho * rho - t * t);
  return -2.0 / 3.0 * r2 * std::sqrt(r2);
}
}  // namespace

// The ball quadrature: rows of cells are resolved with exact chord moments
// and a linear-in-t reconstruction of the row averages (the chord weight
// varies on the cell scale because rho scales with h, so sampling row
// averages at row centers alone would leave a first-order self-similar
// error that the trace extrapolation cannot cancel). The azimuthal
// direction carries uniform weight and exact interval overlaps suffice.
double lebesgue_average(const StructuredGrid& grid, const CellField& field,
                        Point x0, double rho) {
  require_grid(grid, field);
  if (!(rho > 0.0)) throw std::invalid_argument("lebesgue_average: rho > 0");
  const ChartGeometry& geom = grid.geometry();
  const int n0 = grid.n0(), n1 = grid.n1();
  {
    // degenerate-ball guard: the radius must span a couple of rows
    const int near = std::clamp(
        static_cast<int>((x0.z0 - geom.lo(0)) / grid.dz0()), 0, n0 - 1);
    if (rho < 2.0 * grid.transverse_width(near))
      throw std::invalid_argument("lebesgue_average: rho below two cell widths");
  }
  const bool two_d = grid.dim() == 2;
  const double wa0 = two_d ? std::sqrt(geom.metric_at({x0.z0, 0.0}).g[1][1]) *
                                 grid.dz1()
                           : 0.0;
  auto signed_arc = [&](double t) {
    return t >= x0.z0 ? geom.transverse_arclength(x0.z0, t)
                      : -geom.transverse_arclength(t, x0.z0);
  };

  if (!two_d) {
    double num = 0.0, den = 0.0;
    for (int i0 = 0; i0 < n0; ++i0) {
      const double t_lo = std::max(signed_arc(grid.face0_coord(i0)), -rho);
      const double t_hi = std::min(signed_arc(grid.face0_coord(i0 + 1)), rho);
      if (t_hi <= t_lo) continue;
      const double mass = t_hi - t_lo;  // dv = arclength
      num += mass * field[grid.index(i0, 0)];
      den += mass;
    }
    if (den == 0.0)
      throw std::invalid_argument("lebesgue_average: ball too small for grid");
    return num / den;
  }

  // pass 1: per-row azimuthal averages over the chord window
  std::vector<double> row_avg(n0, 0.0), row_t(n0, 0.0);
  std::vector<char> row_ok(n0, 0);
  std::vector<double> row_lo(n0, 0.0), row_hi(n0, 0.0);
  const int j0 = static_cast<int>(std::floor(x0.z1 / grid.dz1()));
  for (int i0 = 0; i0 < n0; ++i0) {
    const double t_lo = std::max(signed_arc(grid.face0_coord(i0)), -rho);
    const double t_hi = std::min(signed_arc(grid.face0_coord(i0 + 1)), rho);
    if (t_hi <= t_lo) continue;
    const double t_mid = 0.5 * (t_lo + t_hi);
    const double half_chord =
        std::sqrt(std::max(0.0, rho * rho - t_mid * t_mid));
    if (half_chord <= 0.0) continue;
    double rn = 0.0, rd = 0.0;
    const int reach = static_cast<int>(half_chord / wa0) + 2;
    for (int dj = -reach; dj <= reach; ++dj) {
      int j = (j0 + dj) % n1;
      if (j < 0) j += n1;
      double dphi = grid.center1(j) - x0.z1;
      dphi = std::remainder(dphi, 2.0 * std::numbers::pi);
      const double a = dphi / grid.dz1() * wa0;
      const double lo = std::max(a - 0.5 * wa0, -half_chord);
      const double hi = std::min(a + 0.5 * wa0, half_chord);
      if (hi <= lo) continue;
      rn += (hi - lo) * field[grid.index(i0, j)];
      rd += hi - lo;
    }
    if (rd <= 0.0) continue;
    row_ok[i0] = 1;
    row_avg[i0] = rn / rd;
    row_t[i0] = signed_arc(grid.center0(i0));
    row_lo[i0] = t_lo;
    row_hi[i0] = t_hi;
  }

  // pass 2: integrate linear reconstructions of u*sqrtg and sqrtg against
  // the exact chord moments
  double num = 0.0, den = 0.0;
  for (int i0 = 0; i0 < n0; ++i0) {
    if (!row_ok[i0]) continue;
    const double sg = grid.cell_sqrtg()[grid.index(i0, 0)];
    const double v = row_avg[i0] * sg;
    double slope_v = 0.0, slope_w = 0.0;
    const bool has_m = i0 > 0 && row_ok[i0 - 1];
    const bool has_p = i0 + 1 < n0 && row_ok[i0 + 1];
    auto row_v = [&](int i) {
      return row_avg[i] * grid.cell_sqrtg()[grid.index(i, 0)];
    };
    auto row_w = [&](int i) { return grid.cell_sqrtg()[grid.index(i, 0)]; };
    if (has_m && has_p) {
      slope_v = (row_v(i0 + 1) - row_v(i0 - 1)) / (row_t[i0 + 1] - row_t[i0 - 1]);
      slope_w = (row_w(i0 + 1) - row_w(i0 - 1)) / (row_t[i0 + 1] - row_t[i0 - 1]);
    } else if (has_p) {
      slope_v = (row_v(i0 + 1) - v) / (row_t[i0 + 1] - row_t[i0]);
      slope_w = (row_w(i0 + 1) - sg) / (row_t[i0 + 1] - row_t[i0]);
    } else if (has_m) {
      slope_v = (v - row_v(i0 - 1)) / (row_t[i0] - row_t[i0 - 1]);
      slope_w = (sg - row_w(i0 - 1)) / (row_t[i0] - row_t[i0 - 1]);
    }
    const double m0 =
        0.5 * (chord_m0(row_hi[i0], rho) - chord_m0(row_lo[i0], rho));
    const double m1 =
        0.5 * (chord_m1(row_hi[i0], rho) - chord_m1(row_lo[i0], rho));
    const double m1c = m1 - row_t[i0] * m0;  // moment about the row center
    num += v * m0 + slope_v * m1c;
    den += sg * m0 + slope_w * m1c;
  }
  if (den <= 0.0)
    throw std::invalid_argument("lebesgue_average: ball too small for grid");
  return num / den;
}

CellField sample_field(const StructuredGrid& grid, const ScalarSampler& f) {
  CellField out(grid);
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    out[c] = f(grid.cell_center(c));
  return out;
}

void write_field_csv(std::ostream& os, const CellField& field) {
  const StructuredGrid& grid = field.grid();
  char buf[160];
  if (grid.dim() == 1) {
    os << "i,z1,value\n";
    for (int i = 0; i < grid.n0(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g", i, grid.center0(i),
                    field[grid.index(i, 0)]);
      os << buf << '\n';
    }
    return;
  }
  os << "i,j,z1,z2,value\n";
  for (int i = 0; i < grid.n0(); ++i)
    for (int j = 0; j < grid.n1(); ++j) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g", i, j,
                    grid.center0(i), grid.center1(j), field[grid.index(i, j)]);
      os << buf << '\n';
    }
}

CellField read_field_csv(std::istream& is, const StructuredGrid& grid) {
  CellField out(grid);
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("field csv: missing header");
  std::size_t count = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<double> cols;
    while (std::getline(ls, tok, ',')) cols.push_back(std::stod(tok));
    const std::size_t expect = grid.dim() == 1 ? 3u : 5u;
    if (cols.size() != expect)
      throw std::invalid_argument("field csv: wrong column count");
    const int i0 = static_cast<int>(cols[0]);
    const int j = grid.dim() == 2 ? static_cast<int>(cols[1]) : 0;
    if (i0 < 0 || i0 >= grid.n0() || j < 0 || j >= grid.n1())
      throw std::invalid_argument("field csv: index out of range");
    out[grid.index(i0, j)] = cols.back();
    ++count;
  }
  if (count != grid.cell_count())
    throw std::invalid_argument("field csv: cell count mismatch");
  return out;
}

}  // namespace mclaw
