#include <cmath>
#include <vector>

#include "kernels_detail.hpp"

// Scalar reference backend. The loops are written to match the AVX2 variant
// operation for operation: striped 4-lane accumulators, block partials,
// identical combine order.

namespace mclaw::kernels::detail {
namespace {

template <class Elem>
double striped_block(std::size_t base, std::size_t m, Elem elem) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t groups = m / 4;
  for (std::size_t k = 0; k < groups; ++k) {
    const std::size_t i = base + 4 * k;
    lane[0] += elem(i + 0);
    lane[1] += elem(i + 1);
    lane[2] += elem(i + 2);
    lane[3] += elem(i + 3);
  }
  for (std::size_t j = 4 * groups; j < m; ++j) lane[j - 4 * groups] += elem(base + j);
  return combine_lanes(lane);
}

template <class Elem>
double blocked_sum(std::size_t n, Elem elem) {
  if (n == 0) return 0.0;
  std::vector<double> partials;
  partials.reserve(n / kBlock + 1);
  for (std::size_t base = 0; base < n; base += kBlock) {
    const std::size_t m = (n - base < kBlock) ? n - base : kBlock;
    partials.push_back(striped_block(base, m, elem));
  }
  return combine_pairwise(partials.data(), partials.size());
}

double k_sum(std::span<const double> x) {
  return blocked_sum(x.size(), [&](std::size_t i) { return x[i]; });
}

double k_dot(std::span<const double> x, std::span<const double> y) {
  return blocked_sum(x.size(), [&](std::size_t i) { return x[i] * y[i]; });
}

double k_l1_weighted(std::span<const double> x, std::span<const double> w) {
  return blocked_sum(x.size(),
                     [&](std::size_t i) { return std::fabs(x[i]) * w[i]; });
}

double k_l1_diff_weighted(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w) {
  return blocked_sum(
      x.size(), [&](std::size_t i) { return std::fabs(x[i] - y[i]) * w[i]; });
}

double k_max_abs(std::span<const double> x) {
  const std::size_t n = x.size();
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t groups = n / 4;
  for (std::size_t k = 0; k < groups; ++k) {
    for (int j = 0; j < 4; ++j) {
      const double v = std::fabs(x[4 * k + j]);
      lane[j] = v > lane[j] ? v : lane[j];
    }
  }
  for (std::size_t j = 4 * groups; j < n; ++j) {
    const double v = std::fabs(x[j]);
    lane[j - 4 * groups] = v > lane[j - 4 * groups] ? v : lane[j - 4 * groups];
  }
  const double a = lane[0] > lane[1] ? lane[0] : lane[1];
  const double b = lane[2] > lane[3] ? lane[2] : lane[3];
  return a > b ? a : b;
}

void k_min_max(std::span<const double> x, double* lo, double* hi) {
  const std::size_t n = x.size();
  if (n == 0) {
    *lo = 0.0;
    *hi = 0.0;
    return;
  }
  double lmin[4], lmax[4];
  for (int j = 0; j < 4; ++j) {
    lmin[j] = x[0];
    lmax[j] = x[0];
  }
  const std::size_t groups = n / 4;
  for (std::size_t k = 0; k < groups; ++k) {
    for (int j = 0; j < 4; ++j) {
      const double v = x[4 * k + j];
      lmin[j] = v < lmin[j] ? v : lmin[j];
      lmax[j] = v > lmax[j] ? v : lmax[j];
    }
  }
  for (std::size_t j = 4 * groups; j < n; ++j) {
    const double v = x[j];
    const std::size_t l = j - 4 * groups;
    lmin[l] = v < lmin[l] ? v : lmin[l];
    lmax[l] = v > lmax[l] ? v : lmax[l];
  }
  const double a = lmin[0] < lmin[1] ? lmin[0] : lmin[1];
  const double b = lmin[2] < lmin[3] ? lmin[2] : lmin[3];
  *lo = a < b ? a : b;
  const double c = lmax[0] > lmax[1] ? lmax[0] : lmax[1];
  const double d = lmax[2] > lmax[3] ? lmax[2] : lmax[3];
  *hi = c > d ? c : d;
}

void k_lincomb2(std::span<double> out, double a, std::span<const double> x,
                double b, std::span<const double> y) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void k_accum_diff(std::span<double> acc, std::span<const double> plus,
                  std::span<const double> minus) {
  const std::size_t n = acc.size();
  for (std::size_t i = 0; i < n; ++i) acc[i] += plus[i] - minus[i];
}

void k_update_cells(std::span<double> out, std::span<const double> u,
                    std::span<const double> net,
                    std::span<const double> inv_vol, double dt) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i] - dt * (net[i] * inv_vol[i]);
}

void k_face_diff(std::span<double> out, std::span<const double> ul,
                 std::span<const double> ur, std::span<const double> coef) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = coef[i] * (ur[i] - ul[i]);
}

void k_clamp_min(std::span<double> out, std::span<const double> x, double c) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] > c ? x[i] : c;
}

void k_clamp_max(std::span<double> out, std::span<const double> x, double c) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] < c ? x[i] : c;
}

void k_godunov_linear(std::span<double> out, std::span<const double> ul,
                      std::span<const double> ur, double q) {
  const std::size_t n = out.size();
  if (q >= 0.0) {
    for (std::size_t i = 0; i < n; ++i) out[i] = q * ul[i];
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = q * ur[i];
  }
}

void k_godunov_burgers(std::span<double> out, std::span<const double> ul,
                       std::span<const double> ur, double q) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = godunov_burgers_elem(ul[i], ur[i], q);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      k_sum,         k_dot,        k_l1_weighted, k_l1_diff_weighted,
      k_max_abs,     k_min_max,    k_lincomb2,    k_accum_diff,
      k_update_cells, k_face_diff, k_clamp_min,   k_clamp_max,
      k_godunov_linear, k_godunov_burgers,
  };
  return ops;
}

}  // namespace mclaw::kernels::detail
