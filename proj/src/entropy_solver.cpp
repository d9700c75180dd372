#include "mclaw/entropy_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "solver_core.hpp"

namespace mclaw {

namespace detail {

void fill_advective_faces(const StructuredGrid& grid, const FluxFamily& flux,
                          std::span<const double> u, double t, double ghost,
                          SolverWork& w) {
  const int n0 = w.n0, n1 = w.n1;
  const double q0 = flux.a(t) * grid.dz1();
  std::span<double> f0(w.adv.f0);
  std::fill(w.ghost_row.begin(), w.ghost_row.end(), ghost);
  const std::size_t inner = static_cast<std::size_t>(n0 - 1) * n1;
  face_flux_sweep(flux, f0.subspan(n1, inner), u.subspan(0, inner),
                  u.subspan(n1, inner), q0);
  face_flux_sweep(flux, f0.subspan(0, n1), w.ghost_row, u.subspan(0, n1), q0);
  face_flux_sweep(flux, f0.subspan(static_cast<std::size_t>(n0) * n1, n1),
                  u.subspan(inner, n1), w.ghost_row, q0);
  if (grid.dim() == 2) {
    std::span<double> f1(w.adv.f1);
    for (int i0 = 0; i0 < n0; ++i0) {
      const double q1 = w.q1_row[i0];
      const std::size_t base = static_cast<std::size_t>(i0) * (n1 + 1);
      const std::size_t row = static_cast<std::size_t>(i0) * n1;
      face_flux_sweep(flux, f1.subspan(base + 1, n1 - 1),
                      u.subspan(row, n1 - 1), u.subspan(row + 1, n1 - 1), q1);
      f1[base] = face_flux_point(flux, u[row + n1 - 1], u[row], q1);
      f1[base + n1] = f1[base];
    }
  }
}

double add_diffusion(const StructuredGrid& grid, std::span<const double> u,
                     SolverWork& w) {
  const int n0 = w.n0, n1 = w.n1;
  std::span<double> fd(w.fd0);
  std::span<const double> coef(w.diff_coef0);
  const std::size_t inner = static_cast<std::size_t>(n0 - 1) * n1;
  kernels::face_diff(fd.subspan(n1, inner), u.subspan(0, inner),
                     u.subspan(n1, inner), coef.subspan(n1, inner));
  for (int j = 0; j < n1; ++j) {
    fd[j] = coef[j] * (2.0 * u[j]);  // odd-reflection ghost
    const std::size_t top = static_cast<std::size_t>(n0) * n1 + j;
    fd[top] = coef[top] * (-2.0 * u[inner + j]);
  }
  const std::size_t cells = grid.cell_count();
  kernels::accum_diff(w.net, fd.subspan(n1, cells), fd.subspan(0, cells));
  if (grid.dim() == 2) {
    std::span<double> f1(w.fd1_row);
    for (int i0 = 0; i0 < n0; ++i0) {
      const double c1 = w.diff_coef1_row[i0];
      const std::size_t row = static_cast<std::size_t>(i0) * n1;
      kernels::lincomb2(f1.subspan(1, n1 - 1), c1, u.subspan(row + 1, n1 - 1),
                        -c1, u.subspan(row, n1 - 1));
      f1[0] = c1 * (u[row] - u[row + n1 - 1]);
      f1[n1] = f1[0];
      std::span<double> net(w.net);
      std::span<const double> f1c(w.fd1_row);
      kernels::accum_diff(net.subspan(row, n1), f1c.subspan(1, n1),
                          f1c.subspan(0, n1));
    }
  }
  return kernels::sum(fd.subspan(static_cast<std::size_t>(n0) * n1, n1)) -
         kernels::sum(fd.subspan(0, n1));
}

}  // namespace detail

void advective_face_fluxes(const StructuredGrid& grid, const FluxFamily& flux,
                           std::span<const double> u, double t, double ghost,
                           FaceFluxes& out) {
  detail::SolverWork w(grid, flux, 0.0);
  detail::fill_advective_faces(grid, flux, u, t, ghost, w);
  out = std::move(w.adv);
}

void flux_divergence_add(const StructuredGrid& grid, const FaceFluxes& f,
                         std::span<double> net) {
  const int n0 = grid.n0(), n1 = grid.n1();
  const std::size_t cells = grid.cell_count();
  std::span<const double> f0(f.f0);
  kernels::accum_diff(net, f0.subspan(n1, cells), f0.subspan(0, cells));
  if (grid.dim() == 2) {
    std::span<const double> f1(f.f1);
    for (int i0 = 0; i0 < n0; ++i0) {
      const std::size_t base = static_cast<std::size_t>(i0) * (n1 + 1);
      const std::size_t row = static_cast<std::size_t>(i0) * n1;
      kernels::accum_diff(net.subspan(row, n1), f1.subspan(base + 1, n1),
                          f1.subspan(base, n1));
    }
  }
}

double boundary_flux_total(const StructuredGrid& grid, const FaceFluxes& f) {
  const int n0 = grid.n0(), n1 = grid.n1();
  std::span<const double> f0(f.f0);
  return kernels::sum(f0.subspan(static_cast<std::size_t>(n0) * n1, n1)) -
         kernels::sum(f0.subspan(0, n1));
}

double entropy_S_eta(double z, double eta) {
  if (z < -eta) return -z;
  if (z > eta) return z;
  return 0.5 * z * z / eta + 0.5 * eta;
}

double entropy_s_eta(double z, double eta) {
  if (z < -eta) return -1.0;
  if (z > eta) return 1.0;
  return z / eta;
}

double entropy_residual_cells(const StructuredGrid& grid,
                              const FluxFamily& flux,
                              std::span<const double> u_old,
                              std::span<const double> u_new, double dt,
                              double t, double k) {
  const std::size_t cells = grid.cell_count();
  thread_local std::vector<double> hi, lo, net_hi, net_lo;
  hi.resize(cells);
  lo.resize(cells);
  net_hi.assign(cells, 0.0);
  net_lo.assign(cells, 0.0);
  kernels::clamp_min(hi, u_old, k);  // u v k
  kernels::clamp_max(lo, u_old, k);  // u ^ k
  detail::SolverWork work(grid, flux, 0.0);
  detail::fill_advective_faces(grid, flux, hi, t, std::max(0.0, k), work);
  flux_divergence_add(grid, work.adv, net_hi);
  detail::fill_advective_faces(grid, flux, lo, t, std::min(0.0, k), work);
  flux_divergence_add(grid, work.adv, net_lo);

  const auto inv_vol = grid.inv_cell_volumes();
  double worst = 0.0;
  for (std::size_t c = 0; c < cells; ++c) {
    const double r = std::fabs(u_new[c] - k) - std::fabs(u_old[c] - k) +
                     dt * (net_hi[c] - net_lo[c]) * inv_vol[c];
    if (r > worst) worst = r;
  }
  return worst;
}

double bln_residual(const FluxFamily& flux, const ChartGeometry& geom,
                    double trace_value, const StructuredGrid::BoundaryFace& face,
                    double t, const EntropyCheckConfig& cfg) {
  if (trace_value == 0.0) return 0.0;  // I(0,0) degenerates
  const double sgn = trace_value > 0.0 ? 1.0 : -1.0;
  const double lo = std::min(trace_value, 0.0);
  const double hi = std::max(trace_value, 0.0);
  const Vec2 x = dflux_eval(flux, geom, 1.0, face.center, t);  // X itself for
  // linear h; for burgers dflux(1) = X as well since h'(1) = 1
  const double qn = geom.inner_product_at(face.center, x, face.normal);
  const double h_tu = flux.h(trace_value);
  const int n = std::max(2, cfg.k_samples_boundary);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double k = lo + (hi - lo) * i / (n - 1);
    best = std::min(best, sgn * (h_tu - flux.h(k)) * qn);
  }
  // sonic candidate (an endpoint of I(Tu,0) for the built-ins, kept for
  // robustness against future flux kinds)
  best = std::min(best, sgn * (h_tu - flux.h(std::clamp(0.0, lo, hi))) * qn);
  return std::fabs(best);
}

HyperbolicSolver::HyperbolicSolver(const Scenario& sc,
                                   std::shared_ptr<const StructuredGrid> grid)
    : sc_(sc),
      grid_(std::move(grid)),
      u_(sc.initial.sample(*grid_)),
      u_next_(*grid_),
      work_(std::make_unique<detail::SolverWork>(*grid_, sc.flux, 0.0)) {
  linf0_ = kernels::max_abs(u_.values());
  const auto mm = kernels::min_max(u_.values());
  range_ = {std::min(mm.first, 0.0), std::max(mm.second, 0.0)};
  const int nk = std::max(1, sc_.kruzkov_levels);
  const double sup = linf0_;
  for (int i = 0; i < nk; ++i)
    kruzkov_.push_back(nk == 1 ? 0.0 : -sup + 2.0 * sup * i / (nk - 1));
}

HyperbolicSolver::~HyperbolicSolver() = default;
HyperbolicSolver::HyperbolicSolver(HyperbolicSolver&&) noexcept = default;

void HyperbolicSolver::set_state(const CellField& u) {
  require_grid(*grid_, u);
  u_ = u;
  linf0_ = kernels::max_abs(u_.values());
  const auto mm = kernels::min_max(u_.values());
  range_ = {std::min(mm.first, 0.0), std::max(mm.second, 0.0)};
}

double HyperbolicSolver::stable_dt_now() const {
  return stable_dt(sc_, *grid_, t_, range_);
}

void HyperbolicSolver::step(double dt) {
  detail::SolverWork& w = *work_;
  std::fill(w.net.begin(), w.net.end(), 0.0);
  detail::fill_advective_faces(*grid_, sc_.flux, u_.values(), t_, 0.0, w);
  flux_divergence_add(*grid_, w.adv, w.net);
  last_boundary_flux_ = boundary_flux_total(*grid_, w.adv);
  kernels::update_cells(u_next_.values(), u_.values(), w.net,
                        grid_->inv_cell_volumes(), dt);

  last_dudt_l1_ =
      kernels::l1_diff_weighted(u_next_.values(), u_.values(),
                                grid_->cell_volumes()) /
      dt;
  if (sc_.monitor_entropy) {
    double worst = 0.0;
    for (double k : kruzkov_)
      worst = std::max(worst, entropy_residual_cells(*grid_, sc_.flux,
                                                     u_.values(),
                                                     u_next_.values(), dt, t_,
                                                     k));
    last_entropy_residual_ = worst;
  }
  std::swap(u_, u_next_);
  t_ += dt;
  ++steps_;
  const double linf = kernels::max_abs(u_.values());
  if (!std::isfinite(linf) || linf > 1.1 * linf0_ + 1e-12)
    throw SolverAbort("hyperbolic step diverged: |u|_inf = " +
                          std::to_string(linf) + " at t = " +
                          std::to_string(t_),
                      steps_, t_, linf);
}

std::vector<double> output_times(double horizon, double cadence) {
  if (!(horizon > 0.0) || !(cadence > 0.0))
    throw std::invalid_argument("output_times: horizon and cadence must be > 0");
  std::vector<double> out{0.0};
  for (int k = 1; k * cadence < horizon - 1e-12; ++k)
    out.push_back(k * cadence);
  out.push_back(horizon);
  return out;
}

namespace {

SeriesRecord make_record(const StructuredGrid& grid, const CellField& u,
                         double t, double dudt, double mass_flux,
                         double entropy_max, double bln_max) {
  SeriesRecord r;
  r.t = t;
  r.linf = kernels::max_abs(u.values());
  const bv::TVReport tv = bv::total_variation(grid, u);
  r.tv_jump = tv.tv_jump;
  r.tv_gradient = tv.tv_gradient;
  r.dudt_l1 = dudt;
  r.mass = kernels::dot(u.values(), grid.cell_volumes());
  r.entropy_cell_resid_max = entropy_max;
  r.bln_resid_max = bln_max;
  r.boundary_mass_flux = mass_flux;
  return r;
}

}  // namespace

HyperbolicResult solve_hyperbolic(const Scenario& sc,
                                  const HyperbolicOptions& opt) {
  if (sc.viscosity != 0.0)
    throw std::invalid_argument("solve_hyperbolic: scenario has viscosity > 0");
  auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());
  HyperbolicSolver solver(sc, grid);
  HyperbolicResult res{.grid = grid,
                       .series = {},
                       .snapshots = {},
                       .snapshot_steps = {},
                       .traces = {},
                       .final_state = solver.state(),
                       .max_dudt_l1 = 0.0,
                       .max_entropy_residual = 0.0,
                       .steps = 0,
                       .step_times = {},
                       .step_sizes = {},
                       .trajectory = {}};

  const std::vector<double> outs = output_times(sc.horizon, sc.cadence);
  double dudt_window = 0.0, entropy_window = 0.0;
  auto emit = [&](double t) {
    FaceFluxes f;
    advective_face_fluxes(*grid, sc.flux, solver.state().values(), t, 0.0, f);
    const double mass_flux = boundary_flux_total(*grid, f);
    const bv::TraceField tf = bv::extract_trace(*grid, solver.state());
    double bln_max = 0.0;
    const auto faces = grid->boundary_faces();
    for (std::size_t k = 0; k < faces.size(); ++k)
      bln_max = std::max(bln_max, bln_residual(sc.flux, grid->geometry(),
                                               tf.values[k], faces[k], t));
    res.series.push_back(make_record(*grid, solver.state(), t, dudt_window,
                                     mass_flux, entropy_window, bln_max));
    res.snapshots.emplace_back(t, solver.state());
    res.snapshot_steps.push_back(solver.steps());
    res.traces.emplace_back(t, tf);
    dudt_window = 0.0;
    entropy_window = 0.0;
  };

  emit(0.0);
  for (std::size_t m = 1; m < outs.size(); ++m) {
    const double target = outs[m];
    while (solver.time() < target - 1e-12) {
      const double dt =
          std::min(solver.stable_dt_now(), target - solver.time());
      if (opt.store_trajectory) {
        res.step_times.push_back(solver.time());
        res.step_sizes.push_back(dt);
        res.trajectory.push_back(solver.state());
      }
      solver.step(dt);
      dudt_window = std::max(dudt_window, solver.last_dudt_l1());
      entropy_window = std::max(entropy_window, solver.last_entropy_residual());
      res.max_dudt_l1 = std::max(res.max_dudt_l1, solver.last_dudt_l1());
      res.max_entropy_residual =
          std::max(res.max_entropy_residual, solver.last_entropy_residual());
    }
    emit(target);
  }
  res.final_state = solver.state();
  res.steps = solver.steps();
  return res;
}

// ---------------------------------------------------------------------------
// weak entropy residual
// ---------------------------------------------------------------------------
namespace {

// quintic bump profile on [-1,1] built from the cutoff smoothstep
double bump(double xi) { return smoothstep_quintic(std::fabs(xi)); }

double bump_deriv(double xi) {
  const double a = std::fabs(xi);
  if (a <= 0.0 || a >= 1.0) return 0.0;
  const double d = -(30.0 * a * a - 60.0 * a * a * a + 30.0 * a * a * a * a);
  return xi > 0.0 ? d : -d;
}

struct TestBump {
  double x0, rx;      // transverse center/half-width
  double phi0, rphi;  // azimuthal (2D)
  double t0, rt;
  bool two_d;

  double spatial(Point z) const {
    double v = bump((z.z0 - x0) / rx);
    if (two_d) {
      const double dphi = std::remainder(z.z1 - phi0, 2.0 * std::numbers::pi);
      v *= bump(dphi / rphi);
    }
    return v;
  }
  Vec2 grad_spatial_cov(Point z) const {  // covariant d(spatial)
    Vec2 g{bump_deriv((z.z0 - x0) / rx) / rx, 0.0};
    if (two_d) {
      const double dphi = std::remainder(z.z1 - phi0, 2.0 * std::numbers::pi);
      g[1] = bump((z.z0 - x0) / rx) * bump_deriv(dphi / rphi) / rphi;
      g[0] *= bump(dphi / rphi);
    }
    return g;
  }
  double temporal(double t) const { return bump((t - t0) / rt); }
  double temporal_deriv(double t) const {
    return bump_deriv((t - t0) / rt) / rt;
  }
};

}  // namespace

double entropy_residual_weak(const Scenario& sc, const HyperbolicResult& run,
                             const EntropyCheckConfig& cfg) {
  if (run.trajectory.empty())
    throw std::invalid_argument(
        "entropy_residual_weak: run lacks a stored trajectory");
  const StructuredGrid& grid = *run.grid;
  const ChartGeometry& geom = grid.geometry();
  const bool two_d = grid.dim() == 2;
  const double sup = kernels::max_abs(run.trajectory.front().values());

  std::vector<double> klevels;
  const int nk = std::max(1, cfg.kruzkov_levels);
  for (int i = 0; i < nk; ++i)
    klevels.push_back(nk == 1 ? 0.0 : -sup + 2.0 * sup * i / (nk - 1));

  std::vector<TestBump> bumps;
  const int nl = std::max(1, cfg.phi_lattice);
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < (two_d ? nl : 1); ++b)
      for (int c = 0; c < nl; ++c) {
        TestBump tb;
        tb.x0 = geom.lo(0) + (a + 1.0) / (nl + 1.0) * geom.extent(0);
        tb.rx = 0.35 * geom.extent(0);
        tb.phi0 = two_d ? b * 2.0 * std::numbers::pi / nl : 0.0;
        tb.rphi = two_d ? 2.2 : 1.0;
        tb.t0 = (0.3 + 0.4 * c / std::max(1, nl - 1)) * sc.horizon;
        tb.rt = 0.25 * sc.horizon;
        tb.two_d = two_d;
        bumps.push_back(tb);
      }

  // cache cell metrics for the inner products
  const std::size_t cells = grid.cell_count();
  std::vector<Point> centers(cells);
  for (std::size_t c = 0; c < cells; ++c) centers[c] = grid.cell_center(c);

  double worst = std::numeric_limits<double>::infinity();
  for (const TestBump& tb : bumps) {
    // spatial factors are time-independent
    std::vector<double> sval(cells), sg0(cells), sg1(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      sval[c] = tb.spatial(centers[c]);
      const Vec2 gc = tb.grad_spatial_cov(centers[c]);
      // raise indices (diagonal metric)
      sg0[c] = grid.cell_ginv00()[c] * gc[0];
      sg1[c] = two_d ? grid.cell_ginv11()[c] * gc[1] : 0.0;
    }
    for (double k : klevels) {
      double val = 0.0;
      for (std::size_t n = 0; n < run.trajectory.size(); ++n) {
        const double dt = run.step_sizes[n];
        const double tm = run.step_times[n] + 0.5 * dt;
        const double bt = tb.temporal(tm);
        const double btd = tb.temporal_deriv(tm);
        if (bt == 0.0 && btd == 0.0) continue;
        const auto u = run.trajectory[n].values();
        const double at = sc.flux.a(tm);
        double acc = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
          const double phi_t = sval[c] * btd;
          const double du = u[c] - k;
          double term = std::fabs(du) * phi_t;
          if (du != 0.0 && (sg0[c] != 0.0 || sg1[c] != 0.0)) {
            const double s = du > 0.0 ? 1.0 : -1.0;
            const double dh = sc.flux.h(u[c]) - sc.flux.h(k);
            // <f(u)-f(k), grad phi>_g with X = (a/sqrtg, c)
            const double sgc = grid.cell_sqrtg()[c];
            const double x0 = at / sgc;
            const double x1 = two_d ? sc.flux.c(centers[c].z0) : 0.0;
            const double g00 = 1.0 / grid.cell_ginv00()[c];
            double ip = g00 * x0 * sg0[c];
            if (two_d) ip += (1.0 / grid.cell_ginv11()[c]) * x1 * sg1[c];
            term += s * dh * ip * bt;
          }
          acc += term * grid.cell_volumes()[c];
        }
        val += dt * acc;
      }
      // boundary term over the stored output-time traces
      const double sgn_k = k > 0.0 ? 1.0 : (k < 0.0 ? -1.0 : 0.0);
      if (sgn_k != 0.0) {
        for (std::size_t m = 0; m < run.traces.size(); ++m) {
          const double tm = run.traces[m].first;
          const double w_lo = m == 0 ? tm : run.traces[m - 1].first;
          const double w_hi =
              m + 1 == run.traces.size() ? tm : run.traces[m + 1].first;
          const double wt = 0.5 * (w_hi - w_lo);
          if (wt <= 0.0) continue;
          const double bt = tb.temporal(tm);
          if (bt == 0.0) continue;
          const auto& tf = run.traces[m].second;
          const auto faces = grid.boundary_faces();
          double acc = 0.0;
          for (std::size_t f = 0; f < faces.size(); ++f) {
            const double tu = tf.values[f];
            const Vec2 x = dflux_eval(sc.flux, geom, 1.0, faces[f].center, tm);
            const double qn =
                geom.inner_product_at(faces[f].center, x, faces[f].normal);
            const double phi_f = tb.spatial(faces[f].center) * bt;
            acc += sgn_k * (sc.flux.h(tu) - sc.flux.h(k)) * qn * phi_f *
                   faces[f].measure;
          }
          val += wt * acc;
        }
      }
      worst = std::min(worst, val);
    }
  }
  return worst;
}

std::vector<std::pair<double, double>> l1_contraction_check(
    const Scenario& sc, const InitialSpec& u0_a, const InitialSpec& u0_b) {
  Scenario sa = sc, sb = sc;
  sa.initial = u0_a;
  sb.initial = u0_b;
  sa.monitor_entropy = sb.monitor_entropy = false;
  auto grid = std::make_shared<const StructuredGrid>(sc.make_grid());

  std::vector<std::pair<double, double>> out;
  const std::vector<double> outs = output_times(sc.horizon, sc.cadence);
  if (sc.viscosity > 0.0) {
    ViscousSolver a(sa, grid), b(sb, grid);
    auto dist = [&] {
      return kernels::l1_diff_weighted(a.state().values(), b.state().values(),
                                       grid->cell_volumes());
    };
    out.emplace_back(0.0, dist());
    for (std::size_t m = 1; m < outs.size(); ++m) {
      while (a.time() < outs[m] - 1e-12) {
        const double dt = std::min({a.stable_dt_now(), b.stable_dt_now(),
                                    outs[m] - a.time()});
        a.step(dt);
        b.step(dt);
      }
      out.emplace_back(outs[m], dist());
    }
    return out;
  }
  HyperbolicSolver a(sa, grid), b(sb, grid);
  auto dist = [&] {
    return kernels::l1_diff_weighted(a.state().values(), b.state().values(),
                                     grid->cell_volumes());
  };
  out.emplace_back(0.0, dist());
  for (std::size_t m = 1; m < outs.size(); ++m) {
    while (a.time() < outs[m] - 1e-12) {
      const double dt =
          std::min({a.stable_dt_now(), b.stable_dt_now(), outs[m] - a.time()});
      a.step(dt);
      b.step(dt);
    }
    out.emplace_back(outs[m], dist());
  }
  return out;
}

}  // namespace mclaw
