#include <cmath>
#include <vector>

#include "kernels_detail.hpp"

// AVX2 backend. Compiled with -mavx2; only reached when the dispatcher has
// confirmed CPU support at run time. Each loop mirrors the scalar reference
// exactly: vertical 4-lane accumulation corresponds to the striped scalar
// lanes, tails are handled with the identical scalar arithmetic, and no FMA
// is emitted, so results are bit-identical to the scalar backend.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace mclaw::kernels::detail {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline double combine_acc(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return combine_lanes(lane);
}

// elem_vec(i) loads 4 consecutive elements starting at i; elem(i) is the
// matching scalar expression for the tail.
template <class ElemVec, class Elem>
double striped_block(std::size_t base, std::size_t m, ElemVec elem_vec,
                     Elem elem) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t groups = m / 4;
  for (std::size_t k = 0; k < groups; ++k)
    acc = _mm256_add_pd(acc, elem_vec(base + 4 * k));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t j = 4 * groups; j < m; ++j)
    lane[j - 4 * groups] += elem(base + j);
  return combine_lanes(lane);
}

template <class ElemVec, class Elem>
double blocked_sum(std::size_t n, ElemVec elem_vec, Elem elem) {
  if (n == 0) return 0.0;
  std::vector<double> partials;
  partials.reserve(n / kBlock + 1);
  for (std::size_t base = 0; base < n; base += kBlock) {
    const std::size_t m = (n - base < kBlock) ? n - base : kBlock;
    partials.push_back(striped_block(base, m, elem_vec, elem));
  }
  return combine_pairwise(partials.data(), partials.size());
}

double k_sum(std::span<const double> x) {
  const double* px = x.data();
  return blocked_sum(
      x.size(), [&](std::size_t i) { return _mm256_loadu_pd(px + i); },
      [&](std::size_t i) { return px[i]; });
}

double k_dot(std::span<const double> x, std::span<const double> y) {
  const double* px = x.data();
  const double* py = y.data();
  return blocked_sum(
      x.size(),
      [&](std::size_t i) {
        return _mm256_mul_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i));
      },
      [&](std::size_t i) { return px[i] * py[i]; });
}

double k_l1_weighted(std::span<const double> x, std::span<const double> w) {
  const double* px = x.data();
  const double* pw = w.data();
  return blocked_sum(
      x.size(),
      [&](std::size_t i) {
        return _mm256_mul_pd(abs_pd(_mm256_loadu_pd(px + i)),
                             _mm256_loadu_pd(pw + i));
      },
      [&](std::size_t i) { return std::fabs(px[i]) * pw[i]; });
}

double k_l1_diff_weighted(std::span<const double> x, std::span<const double> y,
                          std::span<const double> w) {
  const double* px = x.data();
  const double* py = y.data();
  const double* pw = w.data();
  return blocked_sum(
      x.size(),
      [&](std::size_t i) {
        const __m256d d =
            _mm256_sub_pd(_mm256_loadu_pd(px + i), _mm256_loadu_pd(py + i));
        return _mm256_mul_pd(abs_pd(d), _mm256_loadu_pd(pw + i));
      },
      [&](std::size_t i) { return std::fabs(px[i] - py[i]) * pw[i]; });
}

double k_max_abs(std::span<const double> x) {
  const std::size_t n = x.size();
  const double* px = x.data();
  __m256d acc = _mm256_setzero_pd();
  const std::size_t groups = n / 4;
  for (std::size_t k = 0; k < groups; ++k)
    acc = _mm256_max_pd(abs_pd(_mm256_loadu_pd(px + 4 * k)), acc);
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (std::size_t j = 4 * groups; j < n; ++j) {
    const double v = std::fabs(px[j]);
    const std::size_t l = j - 4 * groups;
    lane[l] = v > lane[l] ? v : lane[l];
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
  const double* px = x.data();
  __m256d vmin = _mm256_set1_pd(px[0]);
  __m256d vmax = vmin;
  const std::size_t groups = n / 4;
  for (std::size_t k = 0; k < groups; ++k) {
    const __m256d v = _mm256_loadu_pd(px + 4 * k);
    vmin = _mm256_min_pd(v, vmin);
    vmax = _mm256_max_pd(v, vmax);
  }
  alignas(32) double lmin[4], lmax[4];
  _mm256_store_pd(lmin, vmin);
  _mm256_store_pd(lmax, vmax);
  for (std::size_t j = 4 * groups; j < n; ++j) {
    const double v = px[j];
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
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r =
        _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i)),
                      _mm256_mul_pd(vb, _mm256_loadu_pd(y.data() + i)));
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

void k_accum_diff(std::span<double> acc, std::span<const double> plus,
                  std::span<const double> minus) {
  const std::size_t n = acc.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(plus.data() + i),
                                    _mm256_loadu_pd(minus.data() + i));
    _mm256_storeu_pd(acc.data() + i,
                     _mm256_add_pd(_mm256_loadu_pd(acc.data() + i), d));
  }
  for (; i < n; ++i) acc[i] += plus[i] - minus[i];
}

void k_update_cells(std::span<double> out, std::span<const double> u,
                    std::span<const double> net,
                    std::span<const double> inv_vol, double dt) {
  const std::size_t n = out.size();
  const __m256d vdt = _mm256_set1_pd(dt);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d scaled = _mm256_mul_pd(_mm256_loadu_pd(net.data() + i),
                                         _mm256_loadu_pd(inv_vol.data() + i));
    const __m256d r = _mm256_sub_pd(_mm256_loadu_pd(u.data() + i),
                                    _mm256_mul_pd(vdt, scaled));
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < n; ++i) out[i] = u[i] - dt * (net[i] * inv_vol[i]);
}

void k_face_diff(std::span<double> out, std::span<const double> ul,
                 std::span<const double> ur, std::span<const double> coef) {
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(ur.data() + i),
                                    _mm256_loadu_pd(ul.data() + i));
    _mm256_storeu_pd(out.data() + i,
                     _mm256_mul_pd(_mm256_loadu_pd(coef.data() + i), d));
  }
  for (; i < n; ++i) out[i] = coef[i] * (ur[i] - ul[i]);
}

void k_clamp_min(std::span<double> out, std::span<const double> x, double c) {
  const std::size_t n = out.size();
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out.data() + i,
                     _mm256_max_pd(_mm256_loadu_pd(x.data() + i), vc));
  for (; i < n; ++i) out[i] = x[i] > c ? x[i] : c;
}

void k_clamp_max(std::span<double> out, std::span<const double> x, double c) {
  const std::size_t n = out.size();
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out.data() + i,
                     _mm256_min_pd(_mm256_loadu_pd(x.data() + i), vc));
  for (; i < n; ++i) out[i] = x[i] < c ? x[i] : c;
}

void k_godunov_linear(std::span<double> out, std::span<const double> ul,
                      std::span<const double> ur, double q) {
  const std::size_t n = out.size();
  const __m256d vq = _mm256_set1_pd(q);
  const std::span<const double> src = q >= 0.0 ? ul : ur;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out.data() + i,
                     _mm256_mul_pd(vq, _mm256_loadu_pd(src.data() + i)));
  for (; i < n; ++i) out[i] = q * src[i];
}

void k_godunov_burgers(std::span<double> out, std::span<const double> ul,
                       std::span<const double> ur, double q) {
  const std::size_t n = out.size();
  const __m256d zero = _mm256_setzero_pd();
  const __m256d vhq = _mm256_set1_pd(0.5 * q);
  std::size_t i = 0;
  if (q >= 0.0) {
    for (; i + 4 <= n; i += 4) {
      const __m256d m1 = _mm256_max_pd(_mm256_loadu_pd(ul.data() + i), zero);
      const __m256d m2 = _mm256_min_pd(_mm256_loadu_pd(ur.data() + i), zero);
      const __m256d s = _mm256_max_pd(_mm256_mul_pd(m1, m1), _mm256_mul_pd(m2, m2));
      _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(vhq, s));
    }
  } else {
    for (; i + 4 <= n; i += 4) {
      const __m256d m1 = _mm256_min_pd(_mm256_loadu_pd(ul.data() + i), zero);
      const __m256d m2 = _mm256_max_pd(_mm256_loadu_pd(ur.data() + i), zero);
      const __m256d s = _mm256_max_pd(_mm256_mul_pd(m1, m1), _mm256_mul_pd(m2, m2));
      _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(vhq, s));
    }
  }
  for (; i < n; ++i) out[i] = godunov_burgers_elem(ul[i], ur[i], q);
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {
      k_sum,         k_dot,        k_l1_weighted, k_l1_diff_weighted,
      k_max_abs,     k_min_max,    k_lincomb2,    k_accum_diff,
      k_update_cells, k_face_diff, k_clamp_min,   k_clamp_max,
      k_godunov_linear, k_godunov_burgers,
  };
  return ops;
}

}  // namespace mclaw::kernels::detail

#else  // non-x86 fallback: the dispatcher never selects this backend

namespace mclaw::kernels::detail {
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace mclaw::kernels::detail

#endif
