#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "mclaw/geometry.hpp"

// Cell-centered structured discretization of a ChartGeometry. Layout is
// row-major with the transverse axis outer and the azimuthal axis inner:
// cell (i0, i1) lives at index i0*n1 + i1. Faces normal to axis 0 form an
// (n0+1) x n1 array; faces normal to axis 1 are periodic and identified by
// the cell to their right (face j sits between cells j-1 mod n1 and j).
//
// All geometric factors are precomputed at build time with the midpoint
// rule: cell volume = sqrt|g|(center) * dz0 * dz1, face measure =
// sqrt|g~|(face center) * transverse width. Reductions go through the
// fixed-order kernels, so integrals are bit-stable.

namespace mclaw {

class StructuredGrid;

class CellField {
 public:
  explicit CellField(const StructuredGrid& grid, double value = 0.0);

  std::span<double> values() & { return v_; }
  std::span<const double> values() const& { return v_; }
  std::span<double> values() && = delete;  // no spans into temporaries
  double& operator[](std::size_t i) { return v_[i]; }
  double operator[](std::size_t i) const { return v_[i]; }
  std::size_t size() const { return v_.size(); }
  const StructuredGrid& grid() const { return *grid_; }

 private:
  const StructuredGrid* grid_;
  std::vector<double> v_;
};

enum class BoundaryMode { dirichlet_zero };

struct GradientField {
  std::vector<double> comp0;  // contravariant components (grad u)^i
  std::vector<double> comp1;  // empty in 1D
};

struct CutoffField {
  CellField values;
  double delta;
};

class StructuredGrid {
 public:
  StructuredGrid(const ChartGeometry& geom, int n0, int n1 = 1);

  const ChartGeometry& geometry() const { return geom_; }
  int dim() const { return geom_.dim(); }
  int n0() const { return n0_; }
  int n1() const { return n1_; }
  std::size_t cell_count() const { return cells_; }
  double dz0() const { return dz0_; }
  double dz1() const { return dz1_; }
  double center0(int i0) const { return c0_[i0]; }
  double center1(int i1) const { return c1_[i1]; }
  std::size_t index(int i0, int i1) const {
    return static_cast<std::size_t>(i0) * n1_ + i1;
  }
  Point cell_center(std::size_t idx) const {
    const int i0 = static_cast<int>(idx) / n1_;
    const int i1 = static_cast<int>(idx) % n1_;
    return {c0_[i0], dim() == 2 ? c1_[i1] : 0.0};
  }

  std::span<const double> cell_volumes() const { return cell_volume_; }
  std::span<const double> inv_cell_volumes() const { return inv_cell_volume_; }
  double total_volume() const { return total_volume_; }
  std::span<const double> cell_sqrtg() const { return cell_sqrtg_; }
  std::span<const double> cell_ginv00() const { return cell_ginv00_; }
  std::span<const double> cell_ginv11() const { return cell_ginv11_; }
  std::span<const double> dist_to_boundary() const { return dist_boundary_; }

  // axis-0 faces, (n0+1) x n1
  double face0_coord(int i0f) const { return geom_.lo(0) + i0f * dz0_; }
  std::span<const double> face0_sqrtg() const { return face0_sqrtg_; }
  std::span<const double> face0_measure() const { return face0_measure_; }
  std::span<const double> face0_diff_coef() const { return face0_diff_coef_; }
  // axis-1 faces: per-row values (the coefficients depend only on the row)
  std::span<const double> face1_sqrtg_row() const { return face1_sqrtg_row_; }
  std::span<const double> face1_diff_coef_row() const {
    return face1_diff_coef_row_;
  }

  struct BoundaryFace {
    int side;          // 0 = transverse lo side, 1 = hi side
    int j;             // azimuthal index (0 in 1D)
    std::size_t cell;  // adjacent cell
    Point center;
    Vec2 normal;  // unit outer normal in g
    double measure;
  };
  std::span<const BoundaryFace> boundary_faces() const { return bfaces_; }
  std::span<const double> boundary_measures() const { return bmeasures_; }

  // Metric cell widths
  double transverse_width(int i0) const;    // metric width of row i0
  double azimuthal_width(int i0) const;     // metric width along axis 1
  double min_cell_width() const { return min_width_; }
  double max_cell_width() const { return max_width_; }

  // Distance in g between x0 and p, exact transversally and scaled with the
  // azimuthal coefficient at x0 (adequate to O(rho^2) for ball averages).
  double metric_offset(Point x0, Point p) const;

 private:
  ChartGeometry geom_;
  int n0_, n1_;
  std::size_t cells_;
  double dz0_, dz1_;
  std::vector<double> c0_, c1_;
  std::vector<double> cell_volume_, inv_cell_volume_;
  std::vector<double> cell_sqrtg_, cell_ginv00_, cell_ginv11_;
  std::vector<double> dist_boundary_;
  std::vector<double> face0_sqrtg_, face0_measure_, face0_diff_coef_;
  std::vector<double> face1_sqrtg_row_, face1_diff_coef_row_;
  std::vector<BoundaryFace> bfaces_;
  std::vector<double> bmeasures_;
  double total_volume_ = 0.0;
  double min_width_ = 0.0, max_width_ = 0.0;
};

StructuredGrid build_grid(const ChartGeometry& geom,
                          std::span<const int> resolution);

double integrate(const StructuredGrid& grid, const CellField& field);
double boundary_integrate(const StructuredGrid& grid,
                          std::span<const double> face_values);

GradientField discrete_gradient(const StructuredGrid& grid,
                                const CellField& field);
CellField discrete_laplace(const StructuredGrid& grid, const CellField& field,
                           BoundaryMode mode);
CutoffField build_cutoff(const StructuredGrid& grid, double delta);
double lebesgue_average(const StructuredGrid& grid, const CellField& field,
                        Point x0, double rho);

// Quintic smoothstep used by the cutoff: 1 for t <= 0, 0 for t >= 1.
double smoothstep_quintic(double t);

CellField sample_field(const StructuredGrid& grid, const ScalarSampler& f);

// CSV serialization: columns i[,j],z1[,z2],value, row-major, 17 significant
// digits.
void write_field_csv(std::ostream& os, const CellField& field);
CellField read_field_csv(std::istream& is, const StructuredGrid& grid);

void require_same_grid(const CellField& a, const CellField& b);
void require_grid(const StructuredGrid& grid, const CellField& f);

}  // namespace mclaw
