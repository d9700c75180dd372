#include "mclaw/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_detail.hpp"

namespace mclaw::kernels {
namespace {

using detail::Ops;

Backend detect_backend() {
  Backend wanted = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("MCLAW_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") {
      wanted = Backend::scalar;
    } else if (v == "avx2") {
      if (!cpu_has_avx2())
        throw std::runtime_error("MCLAW_KERNELS=avx2 but the CPU lacks AVX2");
      wanted = Backend::avx2;
    } else if (v != "auto" && !v.empty()) {
      throw std::runtime_error("MCLAW_KERNELS must be scalar, avx2 or auto");
    }
  }
  return wanted;
}

struct State {
  Backend backend;
  const Ops* ops;
};

State& state() {
  static State s = [] {
    const Backend b = detect_backend();
    return State{b, b == Backend::avx2 ? &detail::avx2_ops()
                                       : &detail::scalar_ops()};
  }();
  return s;
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend active_backend() { return state().backend; }

const char* backend_name() {
  return state().backend == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_has_avx2())
    throw std::runtime_error("AVX2 backend not supported on this CPU");
  state().backend = b;
  state().ops = b == Backend::avx2 ? &detail::avx2_ops() : &detail::scalar_ops();
}

double sum(std::span<const double> x) { return state().ops->sum(x); }

double dot(std::span<const double> x, std::span<const double> y) {
  return state().ops->dot(x, y);
}

double l1_weighted(std::span<const double> x, std::span<const double> w) {
  return state().ops->l1_weighted(x, w);
}

double l1_diff_weighted(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w) {
  return state().ops->l1_diff_weighted(x, y, w);
}

double max_abs(std::span<const double> x) { return state().ops->max_abs(x); }

std::pair<double, double> min_max(std::span<const double> x) {
  double lo, hi;
  state().ops->min_max(x, &lo, &hi);
  return {lo, hi};
}

void lincomb2(std::span<double> out, double a, std::span<const double> x,
              double b, std::span<const double> y) {
  state().ops->lincomb2(out, a, x, b, y);
}

void accum_diff(std::span<double> acc, std::span<const double> plus,
                std::span<const double> minus) {
  state().ops->accum_diff(acc, plus, minus);
}

void update_cells(std::span<double> out, std::span<const double> u,
                  std::span<const double> net, std::span<const double> inv_vol,
                  double dt) {
  state().ops->update_cells(out, u, net, inv_vol, dt);
}

void face_diff(std::span<double> out, std::span<const double> ul,
               std::span<const double> ur, std::span<const double> coef) {
  state().ops->face_diff(out, ul, ur, coef);
}

void clamp_min(std::span<double> out, std::span<const double> x, double c) {
  state().ops->clamp_min(out, x, c);
}

void clamp_max(std::span<double> out, std::span<const double> x, double c) {
  state().ops->clamp_max(out, x, c);
}

void godunov_linear(std::span<double> out, std::span<const double> ul,
                    std::span<const double> ur, double q) {
  state().ops->godunov_linear(out, ul, ur, q);
}

void godunov_burgers(std::span<double> out, std::span<const double> ul,
                     std::span<const double> ur, double q) {
  state().ops->godunov_burgers(out, ul, ur, q);
}

double godunov_linear_point(double ul, double ur, double q) {
  return detail::godunov_linear_elem(ul, ur, q);
}

double godunov_burgers_point(double ul, double ur, double q) {
  return detail::godunov_burgers_elem(ul, ur, q);
}

}  // namespace mclaw::kernels
