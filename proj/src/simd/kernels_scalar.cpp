#include <cmath>
#include <numbers>

#include "cslbound/simd/kernels.hpp"

namespace cslbound::simd {

namespace {

void inverse_sqrt_scale(double coefficient, std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = coefficient / std::sqrt(x[i]);
}

void two_exponential_spectrum(const TwoExponential& wf, std::span<const double> k,
                              std::span<double> out) {
  const double kappa2 = wf.kappa * wf.kappa;
  const double beta2 = wf.beta * wf.beta;
  const double prefactor = (8.0 / std::numbers::pi) * wf.norm * wf.norm;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const double k2 = k[i] * k[i];
    const double da = k2 + kappa2;
    const double db = k2 + beta2;
    const double bracket = 1.0 / (da * da) - wf.weight / (db * db);
    out[i] = prefactor * (k2 * k2) * (bracket * bracket);
  }
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    sum += (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  }
  return 0.5 * sum;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Isa::Scalar, &inverse_sqrt_scale, &two_exponential_spectrum,
                                 &trapezoid};
  return table;
}

}  // namespace cslbound::simd
