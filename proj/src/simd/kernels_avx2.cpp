#include <immintrin.h>

#include <cmath>
#include <numbers>

#include "cslbound/simd/kernels.hpp"

namespace cslbound::simd {

namespace {

void inverse_sqrt_scale(double coefficient, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  const __m256d c = _mm256_set1_pd(coefficient);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(c, _mm256_sqrt_pd(v)));
  }
  for (; i < n; ++i) out[i] = coefficient / std::sqrt(x[i]);
}

void two_exponential_spectrum(const TwoExponential& wf, std::span<const double> k,
                              std::span<double> out) {
  const double kappa2 = wf.kappa * wf.kappa;
  const double beta2 = wf.beta * wf.beta;
  const double prefactor = (8.0 / std::numbers::pi) * wf.norm * wf.norm;

  const __m256d vk2 = _mm256_set1_pd(kappa2);
  const __m256d vb2 = _mm256_set1_pd(beta2);
  const __m256d vw = _mm256_set1_pd(wf.weight);
  const __m256d vp = _mm256_set1_pd(prefactor);
  const __m256d one = _mm256_set1_pd(1.0);

  const std::size_t n = k.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d kv = _mm256_loadu_pd(k.data() + i);
    const __m256d k2 = _mm256_mul_pd(kv, kv);
    const __m256d da = _mm256_add_pd(k2, vk2);
    const __m256d db = _mm256_add_pd(k2, vb2);
    const __m256d ta = _mm256_div_pd(one, _mm256_mul_pd(da, da));
    const __m256d tb = _mm256_div_pd(vw, _mm256_mul_pd(db, db));
    const __m256d bracket = _mm256_sub_pd(ta, tb);
    const __m256d k4 = _mm256_mul_pd(k2, k2);
    const __m256d r = _mm256_mul_pd(_mm256_mul_pd(vp, k4), _mm256_mul_pd(bracket, bracket));
    _mm256_storeu_pd(out.data() + i, r);
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
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 1;
  for (; i + 4 <= n; i += 4) {
    const __m256d x1 = _mm256_loadu_pd(x.data() + i);
    const __m256d x0 = _mm256_loadu_pd(x.data() + i - 1);
    const __m256d y1 = _mm256_loadu_pd(y.data() + i);
    const __m256d y0 = _mm256_loadu_pd(y.data() + i - 1);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_sub_pd(x1, x0), _mm256_add_pd(y1, y0)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) sum += (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return 0.5 * sum;
}

}  // namespace

const KernelTable& avx2_kernels() noexcept {
  static const KernelTable table{Isa::Avx2, &inverse_sqrt_scale, &two_exponential_spectrum,
                                 &trapezoid};
  return table;
}

}  // namespace cslbound::simd
