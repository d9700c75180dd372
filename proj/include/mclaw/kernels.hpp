#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>

// Data-parallel inner loops of the solvers: reductions, element-wise field
// updates, and Godunov face sweeps. Every kernel has a scalar reference
// implementation and (on x86-64) an AVX2 variant selected at run time.
//
// Determinism contract: for identical inputs the scalar and AVX2 variants
// return bit-identical results. Both use the same per-element arithmetic
// (no FMA contraction; the build sets -ffp-contract=off) and the same
// fixed-order reduction tree: 4-lane striped partial sums over blocks of
// kBlock elements, block partials combined pairwise. Equivalence is
// enforced by tests/test_kernels.cpp.

namespace mclaw::kernels {

enum class Backend { scalar, avx2 };

// Block length of the reduction tree. Multiple of 4.
inline constexpr std::size_t kBlock = 1024;

// Active backend: auto-detected at first use (AVX2 when the CPU supports
// it), overridable with MCLAW_KERNELS=scalar|avx2|auto in the environment.
Backend active_backend();
const char* backend_name();

// Test hook. Throws std::runtime_error if the backend is unsupported here.
void force_backend(Backend b);
bool cpu_has_avx2();

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
// sum of |x[i]| * w[i]
double l1_weighted(std::span<const double> x, std::span<const double> w);
// sum of |x[i] - y[i]| * w[i]
double l1_diff_weighted(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w);
double max_abs(std::span<const double> x);
std::pair<double, double> min_max(std::span<const double> x);

// ---------------------------------------------------------------------------
// Element-wise sweeps
// ---------------------------------------------------------------------------

// out[i] = a*x[i] + b*y[i]
void lincomb2(std::span<double> out, double a, std::span<const double> x,
              double b, std::span<const double> y);
// acc[i] += plus[i] - minus[i]
void accum_diff(std::span<double> acc, std::span<const double> plus,
                std::span<const double> minus);
// out[i] = u[i] - dt * net[i] * inv_vol[i]
void update_cells(std::span<double> out, std::span<const double> u,
                  std::span<const double> net, std::span<const double> inv_vol,
                  double dt);
// out[i] = coef[i] * (ur[i] - ul[i])
void face_diff(std::span<double> out, std::span<const double> ul,
               std::span<const double> ur, std::span<const double> coef);
// out[i] = max(x[i], c)   /   out[i] = min(x[i], c)
void clamp_min(std::span<double> out, std::span<const double> x, double c);
void clamp_max(std::span<double> out, std::span<const double> x, double c);

// ---------------------------------------------------------------------------
// Godunov face sweeps
// ---------------------------------------------------------------------------
// Scalar face flux fhat(s) = q * h(s) with a face coefficient q that is
// uniform over the sweep (true for every sweep in this code base: the
// transverse coefficient is a(t) and the azimuthal coefficient is constant
// along a grid row). out[i] = Godunov flux between states ul[i], ur[i]:
// min of fhat over [ul,ur] when ul <= ur, max over [ur,ul] otherwise.

// h(s) = s
void godunov_linear(std::span<double> out, std::span<const double> ul,
                    std::span<const double> ur, double q);
// h(s) = s^2/2 (sonic point 0)
void godunov_burgers(std::span<double> out, std::span<const double> ul,
                     std::span<const double> ur, double q);

// Single-face versions sharing the sweep formulas bit for bit; used for
// boundary faces and by the entropy-residual monitor.
double godunov_linear_point(double ul, double ur, double q);
double godunov_burgers_point(double ul, double ur, double q);

}  // namespace mclaw::kernels
