#pragma once

#include <cmath>
#include <cstddef>
#include <span>

#include "mclaw/kernels.hpp"

// Shared pieces of the kernel implementations. Both backends include this
// header so the per-element arithmetic and the reduction tree are written
// down exactly once.

namespace mclaw::kernels::detail {

// Pairwise combination of per-block partial sums. Runs on at most
// n/kBlock + 1 values, so a plain recursion is fine.
inline double combine_pairwise(const double* p, std::size_t n) {
  if (n == 1) return p[0];
  if (n == 2) return p[0] + p[1];
  const std::size_t half = n / 2;
  return combine_pairwise(p, half) + combine_pairwise(p + half, n - half);
}

// Canonical 4-lane combine order shared by both backends.
inline double combine_lanes(const double lane[4]) {
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

// Godunov closed forms for fhat(s) = q * h(s), uniform q.
//
// linear h: fhat is monotone, so the flux is pure upwinding on sign(q).
inline double godunov_linear_elem(double ul, double ur, double q) {
  return q >= 0.0 ? q * ul : q * ur;
}

// burgers h = s^2/2: fhat is convex for q > 0 (concave for q < 0) with
// sonic point 0. For convex F the exact flux is
//   max(F(max(ul,0)), F(min(ur,0)))
// covering both the a<=b minimisation and the a>b maximisation; the
// concave case swaps the clamps.
inline double godunov_burgers_elem(double ul, double ur, double q) {
  if (q >= 0.0) {
    const double m1 = ul > 0.0 ? ul : 0.0;
    const double m2 = ur < 0.0 ? ur : 0.0;
    const double s1 = m1 * m1;
    const double s2 = m2 * m2;
    return 0.5 * q * (s1 > s2 ? s1 : s2);
  }
  const double m1 = ul < 0.0 ? ul : 0.0;
  const double m2 = ur > 0.0 ? ur : 0.0;
  const double s1 = m1 * m1;
  const double s2 = m2 * m2;
  return 0.5 * q * (s1 > s2 ? s1 : s2);
}

// Function-pointer table filled by each backend.
struct Ops {
  double (*sum)(std::span<const double>);
  double (*dot)(std::span<const double>, std::span<const double>);
  double (*l1_weighted)(std::span<const double>, std::span<const double>);
  double (*l1_diff_weighted)(std::span<const double>, std::span<const double>,
                             std::span<const double>);
  double (*max_abs)(std::span<const double>);
  void (*min_max)(std::span<const double>, double*, double*);
  void (*lincomb2)(std::span<double>, double, std::span<const double>, double,
                   std::span<const double>);
  void (*accum_diff)(std::span<double>, std::span<const double>,
                     std::span<const double>);
  void (*update_cells)(std::span<double>, std::span<const double>,
                       std::span<const double>, std::span<const double>,
                       double);
  void (*face_diff)(std::span<double>, std::span<const double>,
                    std::span<const double>, std::span<const double>);
  void (*clamp_min)(std::span<double>, std::span<const double>, double);
  void (*clamp_max)(std::span<double>, std::span<const double>, double);
  void (*godunov_linear)(std::span<double>, std::span<const double>,
                         std::span<const double>, double);
  void (*godunov_burgers)(std::span<double>, std::span<const double>,
                          std::span<const double>, double);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // only valid when compiled for x86-64

}  // namespace mclaw::kernels::detail
