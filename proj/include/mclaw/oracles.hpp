#pragma once

#include <functional>
#include <vector>

#include "mclaw/problem.hpp"

// Independent reference solutions: backward characteristic tracing for
// linear flux (the boundary condition reduces to the inflow datum 0 there),
// closed-form solutions of the two 1D Burgers boundary scenarios, and the
// vanishing-viscosity comparison table.

namespace mclaw::oracles {

using SpaceTimeFn = std::function<double(Point, double)>;

class CharacteristicTracer {
 public:
  // ode_step: RK4 step along the characteristic (h/4 is the intended scale)
  CharacteristicTracer(const ChartGeometry& geom, const FluxFamily& flux,
                       double ode_step);

  struct Path {
    Point end;
    bool exited = false;
    double exit_time = 0.0;  // time at which the backward path left M
  };

  Path trace_back(Point x, double t) const;
  Point trace_forward(Point z, double t_from, double t_to) const;

  // u(x,t) by backward tracing: u0 at the foot, or 0 for paths entering
  // through the boundary
  double solution(const ScalarSampler& u0, Point x, double t) const;

 private:
  Point rk4(Point z, double tau, double dtau) const;
  ChartGeometry geom_;
  FluxFamily flux_;
  double step_;
  static constexpr double kExitTol = 1e-10;
};

enum class BurgersCase { shock_exit, boundary_rarefaction };

// exact entropy solutions on (0,1) with w == 1, boundary datum 0:
//  shock_exit: u0 = 1 on (0, 0.8); the 1|0 jump exits through x = 1 at
//              t = 0.4 while the inflow fan u = x/t grows from the left
//  boundary_rarefaction: u0 == -1, fan centered at (1,0), valid t < 1
double burgers_interval_exact(BurgersCase which, double x, double t);

double l1_error(const StructuredGrid& grid, const CellField& field,
                const SpaceTimeFn& oracle, double t);

struct LimitRow {
  double eps = 0.0;
  double l1_distance = 0.0;  // space-time L1 against the FV run
  double rate = 0.0;         // log slope vs previous row (0 in the first)
};

std::vector<LimitRow> viscosity_limit_study(const Scenario& sc,
                                            const std::vector<double>& eps_list);

}  // namespace mclaw::oracles
