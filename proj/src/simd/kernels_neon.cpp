#include <arm_neon.h>

#include <cmath>
#include <numbers>

#include "cslbound/simd/kernels.hpp"

namespace cslbound::simd {

namespace {

void inverse_sqrt_scale(double coefficient, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  const float64x2_t c = vdupq_n_f64(coefficient);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out.data() + i, vdivq_f64(c, vsqrtq_f64(vld1q_f64(x.data() + i))));
  }
  for (; i < n; ++i) out[i] = coefficient / std::sqrt(x[i]);
}

void two_exponential_spectrum(const TwoExponential& wf, std::span<const double> k,
                              std::span<double> out) {
  const double kappa2 = wf.kappa * wf.kappa;
  const double beta2 = wf.beta * wf.beta;
  const double prefactor = (8.0 / std::numbers::pi) * wf.norm * wf.norm;

  const float64x2_t vk2 = vdupq_n_f64(kappa2);
  const float64x2_t vb2 = vdupq_n_f64(beta2);
  const float64x2_t vw = vdupq_n_f64(wf.weight);
  const float64x2_t vp = vdupq_n_f64(prefactor);
  const float64x2_t one = vdupq_n_f64(1.0);

  const std::size_t n = k.size();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t kv = vld1q_f64(k.data() + i);
    const float64x2_t k2 = vmulq_f64(kv, kv);
    const float64x2_t da = vaddq_f64(k2, vk2);
    const float64x2_t db = vaddq_f64(k2, vb2);
    const float64x2_t bracket =
        vsubq_f64(vdivq_f64(one, vmulq_f64(da, da)), vdivq_f64(vw, vmulq_f64(db, db)));
    const float64x2_t k4 = vmulq_f64(k2, k2);
    vst1q_f64(out.data() + i, vmulq_f64(vmulq_f64(vp, k4), vmulq_f64(bracket, bracket)));
  }
  for (; i < n; ++i) {
    const double k2 = k[i] * k[i];
    const double da = k2 + kappa2;
    const double db = k2 + beta2;
    const double bracket = 1.0 / (da * da) - wf.weight / (db * db);
    out[i] = prefactor * (k2 * k2) * (bracket * bracket);
  }
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 1;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(x.data() + i), vld1q_f64(x.data() + i - 1));
    const float64x2_t sy = vaddq_f64(vld1q_f64(y.data() + i), vld1q_f64(y.data() + i - 1));
    acc = vaddq_f64(acc, vmulq_f64(dx, sy));
  }
  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) sum += (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return 0.5 * sum;
}

}  // namespace

const KernelTable& neon_kernels() noexcept {
  static const KernelTable table{Isa::Neon, &inverse_sqrt_scale, &two_exponential_spectrum,
                                 &trapezoid};
  return table;
}

}  // namespace cslbound::simd
