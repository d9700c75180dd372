#pragma once

#include <vector>

#include "mclaw/entropy_solver.hpp"
#include "mclaw/kernels.hpp"

// Shared scratch and face machinery of the two time steppers.

namespace mclaw::detail {

inline double face_flux_point(const FluxFamily& flux, double a, double b,
                              double q) {
  return flux.h_kind == HKind::linear ? kernels::godunov_linear_point(a, b, q)
                                      : kernels::godunov_burgers_point(a, b, q);
}

inline void face_flux_sweep(const FluxFamily& flux, std::span<double> out,
                            std::span<const double> ul,
                            std::span<const double> ur, double q) {
  if (flux.h_kind == HKind::linear)
    kernels::godunov_linear(out, ul, ur, q);
  else
    kernels::godunov_burgers(out, ul, ur, q);
}

struct SolverWork {
  explicit SolverWork(const StructuredGrid& grid, const FluxFamily& flux,
                      double eps)
      : n0(grid.n0()), n1(grid.n1()) {
    const std::size_t cells = grid.cell_count();
    net.resize(cells);
    ghost_row.resize(n1);
    adv.f0.resize(static_cast<std::size_t>(n0 + 1) * n1);
    if (grid.dim() == 2) {
      adv.f1.resize(static_cast<std::size_t>(n0) * (n1 + 1));
      q1_row.resize(n0);
      for (int i = 0; i < n0; ++i)
        q1_row[i] = grid.face1_sqrtg_row()[i] * flux.c(grid.center0(i)) *
                    grid.dz0();
    }
    if (eps > 0.0) {
      diff_coef0.assign(grid.face0_diff_coef().begin(),
                        grid.face0_diff_coef().end());
      for (double& v : diff_coef0) v *= -eps;
      fd0.resize(adv.f0.size());
      if (grid.dim() == 2) {
        diff_coef1_row.assign(grid.face1_diff_coef_row().begin(),
                              grid.face1_diff_coef_row().end());
        for (double& v : diff_coef1_row) v *= -eps;
        fd1_row.resize(n1 + 1);
      }
    }
  }

  int n0, n1;
  FaceFluxes adv;
  std::vector<double> net;
  std::vector<double> ghost_row;
  std::vector<double> q1_row;
  // diffusion faces carry the -eps scaling
  std::vector<double> diff_coef0, diff_coef1_row;
  std::vector<double> fd0, fd1_row;
};

void fill_advective_faces(const StructuredGrid& grid, const FluxFamily& flux,
                          std::span<const double> u, double t, double ghost,
                          SolverWork& w);

// adds the diffusive face divergence (already scaled by -eps) into net and
// returns the signed outward diffusive boundary flux
double add_diffusion(const StructuredGrid& grid, std::span<const double> u,
                     SolverWork& w);

}  // namespace mclaw::detail
