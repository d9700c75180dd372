#pragma once

#include <stdexcept>
#include <string>

#include "mclaw/problem.hpp"

// Scenario configuration files: flat sectioned key-value text with `#`
// comments, UTF-8. Sections [geometry], [flux], [initial], [solver],
// [output]; unknown sections or keys are errors with file:line diagnostics.
//
//   [geometry]
//   kind = weighted-interval | spherical-band | surface-of-revolution
//   x_lo, x_hi, beta            (weighted-interval; beta optional, 0)
//   theta0, theta1              (spherical-band)
//   s_lo, s_hi, alpha           (surface-of-revolution; alpha optional, 0)
//
//   [flux]
//   h = linear | burgers
//   a = <value> | sin           (sin uses a_value * sin(2 pi t / a_period))
//   a_value, a_period, c_value  (c_value only for the 2D kinds)
//
//   [initial]
//   profile = constant | step | sine | bump | cos-transverse | csv
//   value | left,right,jump_at | amplitude,mode | amplitude,center,width
//   azimuthal_mode, azimuthal_weight   (2D modulation, optional)
//   path                                (csv)
//
//   [solver]
//   resolution = N [M]
//   horizon, cfl, viscosity, kruzkov_levels, monitor_entropy
//
//   [output]
//   cadence = <output interval>

namespace mclaw {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin);

}  // namespace mclaw
