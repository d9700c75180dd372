#include "mclaw/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mclaw/entropy_solver.hpp"
#include "mclaw/kernels.hpp"
#include "mclaw/viscous_solver.hpp"

namespace mclaw::oracles {

CharacteristicTracer::CharacteristicTracer(const ChartGeometry& geom,
                                           const FluxFamily& flux,
                                           double ode_step)
    : geom_(geom), flux_(flux), step_(ode_step) {
  if (flux.h_kind != HKind::linear)
    throw std::invalid_argument(
        "CharacteristicTracer: linear transport only");
  if (!(ode_step > 0.0))
    throw std::invalid_argument("CharacteristicTracer: ode_step > 0");
}

namespace {

Vec2 char_velocity(const ChartGeometry& geom, const FluxFamily& flux, Point z,
                   double tau) {
  const double sd = geom.metric_at(z).sqrt_det;
  Vec2 v{flux.a(tau) / sd, 0.0};
  if (geom.dim() == 2) v[1] = flux.c(z.z0);
  return v;
}

}  // namespace

Point CharacteristicTracer::rk4(Point z, double tau, double dtau) const {
  auto clampz = [&](Point p) {
    // keep intermediate evaluations inside the closed chart
    p.z0 = std::clamp(p.z0, geom_.lo(0), geom_.hi(0));
    return geom_.wrap(p);
  };
  const Vec2 k1 = char_velocity(geom_, flux_, clampz(z), tau);
  Point p2{z.z0 + 0.5 * dtau * k1[0], z.z1 + 0.5 * dtau * k1[1]};
  const Vec2 k2 = char_velocity(geom_, flux_, clampz(p2), tau + 0.5 * dtau);
  Point p3{z.z0 + 0.5 * dtau * k2[0], z.z1 + 0.5 * dtau * k2[1]};
  const Vec2 k3 = char_velocity(geom_, flux_, clampz(p3), tau + 0.5 * dtau);
  Point p4{z.z0 + dtau * k3[0], z.z1 + dtau * k3[1]};
  const Vec2 k4 = char_velocity(geom_, flux_, clampz(p4), tau + dtau);
  Point out{z.z0 + dtau / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            z.z1 + dtau / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
  return geom_.wrap(out);
}

CharacteristicTracer::Path CharacteristicTracer::trace_back(Point x,
                                                            double t) const {
  Point z = geom_.wrap(x);
  double tau = t;
  while (tau > 0.0) {
    const double dtau = std::min(step_, tau);
    const Point znew = rk4(z, tau, -dtau);
    if (znew.z0 < geom_.lo(0) || znew.z0 > geom_.hi(0)) {
      // bisect the fraction of the step where the path crossed the side
      double s_in = 0.0, s_out = 1.0;
      while ((s_out - s_in) * dtau > kExitTol) {
        const double s = 0.5 * (s_in + s_out);
        const Point zs = rk4(z, tau, -s * dtau);
        if (zs.z0 < geom_.lo(0) || zs.z0 > geom_.hi(0))
          s_out = s;
        else
          s_in = s;
      }
      Path p;
      p.exited = true;
      p.exit_time = tau - s_out * dtau;
      p.end = rk4(z, tau, -s_in * dtau);
      return p;
    }
    z = znew;
    tau -= dtau;
  }
  Path p;
  p.end = z;
  return p;
}

Point CharacteristicTracer::trace_forward(Point z, double t_from,
                                          double t_to) const {
  Point p = geom_.wrap(z);
  double tau = t_from;
  while (tau < t_to - 1e-15) {
    const double dtau = std::min(step_, t_to - tau);
    p = rk4(p, tau, dtau);
    tau += dtau;
  }
  return p;
}

double CharacteristicTracer::solution(const ScalarSampler& u0, Point x,
                                      double t) const {
  const Path p = trace_back(x, t);
  return p.exited ? 0.0 : u0(p.end);
}

double burgers_interval_exact(BurgersCase which, double x, double t) {
  if (t < 0.0) throw std::domain_error("burgers oracle: t >= 0");
  switch (which) {
    case BurgersCase::shock_exit: {
      // u0 = 1 on (0, 0.8), 0 beyond. The initial 1|0 jump is an entropy
      // shock of speed (1+0)/2 that leaves through x = 1 at t = 0.4, while
      // the inflow corner at (0,0) feeds the rarefaction u = x/t (the 0|1
      // ordering there admits no entropy shock). After the exit the state
      // is min(x/t, 1).
      if (t < 0.4 && x > 0.8 + 0.5 * t) return 0.0;
      if (t == 0.0) return x < 0.8 ? 1.0 : 0.0;
      return std::min(x / t, 1.0);
    }
    case BurgersCase::boundary_rarefaction:
      if (t >= 1.0)
        throw std::domain_error("boundary_rarefaction valid for t < 1");
      if (x < 1.0 - t) return -1.0;
      return t > 0.0 ? (x - 1.0) / t : 0.0;
  }
  throw std::domain_error("unknown oracle case");
}

double l1_error(const StructuredGrid& grid, const CellField& field,
                const SpaceTimeFn& oracle, double t) {
  require_grid(grid, field);
  std::vector<double> ref(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c)
    ref[c] = oracle(grid.cell_center(c), t);
  return kernels::l1_diff_weighted(field.values(), ref, grid.cell_volumes());
}

std::vector<LimitRow> viscosity_limit_study(const Scenario& sc,
                                            const std::vector<double>& eps_list) {
  Scenario hyp = sc;
  hyp.viscosity = 0.0;
  hyp.monitor_entropy = false;
  const HyperbolicResult ref = solve_hyperbolic(hyp);

  std::vector<LimitRow> rows;
  for (double eps : eps_list) {
    if (eps == 0.0) {  // degenerate entry: same solver path, zero distance
      rows.push_back({0.0, 0.0, 0.0});
      continue;
    }
    Scenario vis = sc;
    vis.viscosity = eps;
    const ViscousResult run = solve_viscous(vis);
    if (run.snapshots.size() != ref.snapshots.size())
      throw std::runtime_error("viscosity_limit_study: snapshot mismatch");
    // trapezoid in time over the matched snapshots
    double dist = 0.0;
    for (std::size_t m = 0; m < run.snapshots.size(); ++m) {
      const double t_lo =
          m == 0 ? run.snapshots[m].first : run.snapshots[m - 1].first;
      const double t_hi = m + 1 == run.snapshots.size()
                              ? run.snapshots[m].first
                              : run.snapshots[m + 1].first;
      const double w = 0.5 * (t_hi - t_lo);
      if (w <= 0.0) continue;
      dist += w * kernels::l1_diff_weighted(
                      run.snapshots[m].second.values(),
                      ref.snapshots[m].second.values(),
                      ref.grid->cell_volumes());
    }
    LimitRow row;
    row.eps = eps;
    row.l1_distance = dist;
    if (!rows.empty() && rows.back().eps != eps && dist > 0.0 &&
        rows.back().l1_distance > 0.0)
      row.rate = std::log(rows.back().l1_distance / dist) /
                 std::log(rows.back().eps / eps);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mclaw::oracles
