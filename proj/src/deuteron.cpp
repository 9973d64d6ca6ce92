#include "cslbound/deuteron.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

void require_binding_energy(double e) {
  if (!std::isfinite(e) || e <= 0.0) {
    throw DomainError("binding energy must be positive, got " + std::to_string(e));
  }
}

// Spherical Bessel j1 with a series near the origin, where the closed form
// loses all precision to cancellation.
double sph_j1(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0));
  }
  return (std::sin(x) / x - std::cos(x)) / x;
}

}  // namespace

std::string_view model_kind_name(ModelKind kind) noexcept {
  return kind == ModelKind::ZeroRange ? "zero-range" : "hulthen";
}

double binding_wavenumber(double binding_energy_mev, const PhysicalConstants& pc) {
  require_binding_energy(binding_energy_mev);
  return std::sqrt(2.0 * pc.reduced_mass_np_mev * binding_energy_mev) / pc.hbar_c_mev_fm;
}

BoundStateModel BoundStateModel::zero_range(double binding_energy_mev,
                                            const PhysicalConstants& pc) {
  const double kappa = binding_wavenumber(binding_energy_mev, pc);
  return BoundStateModel(ModelKind::ZeroRange, binding_energy_mev, kappa, 0.0,
                         std::sqrt(2.0 * kappa));
}

BoundStateModel BoundStateModel::hulthen(double binding_energy_mev, double beta_over_kappa,
                                         const PhysicalConstants& pc) {
  if (!std::isfinite(beta_over_kappa) || beta_over_kappa <= 1.0) {
    throw DomainError("Hulthen beta/kappa must exceed 1, got " + std::to_string(beta_over_kappa));
  }
  const double kappa = binding_wavenumber(binding_energy_mev, pc);
  const double beta = beta_over_kappa * kappa;
  const double gap = beta - kappa;
  const double norm2 = 2.0 * kappa * beta * (kappa + beta) / (gap * gap);
  return BoundStateModel(ModelKind::Hulthen, binding_energy_mev, kappa, beta, std::sqrt(norm2));
}

double BoundStateModel::u(double r_fm) const noexcept {
  if (kind_ == ModelKind::ZeroRange) return norm_ * std::exp(-kappa_ * r_fm);
  // -expm1 keeps u ~ norm (beta - kappa) r accurate near the origin.
  return -norm_ * std::exp(-kappa_ * r_fm) * std::expm1(-(beta_ - kappa_) * r_fm);
}

double BoundStateModel::analytic_mean_square_radius_fm2() const noexcept {
  if (kind_ == ModelKind::ZeroRange) return 1.0 / (2.0 * kappa_ * kappa_);
  const double s = kappa_ + beta_;
  return norm_ * norm_ *
         (0.25 / (kappa_ * kappa_ * kappa_) + 0.25 / (beta_ * beta_ * beta_) - 4.0 / (s * s * s));
}

simd::TwoExponential BoundStateModel::shape() const noexcept {
  if (kind_ == ModelKind::ZeroRange) return {norm_, kappa_, kappa_, 0.0};
  return {norm_, kappa_, beta_, 1.0};
}

double normalization_integral(const BoundStateModel& m, const QuadratureSpec& q) {
  const auto f = [&m](double r) {
    const double u = m.u(r);
    return u * u;
  };
  return integrate_half_line(f, 0.0, q, 1.0 / m.kappa_per_fm()).value;
}

double mean_square_radius_cm2(const BoundStateModel& m, const QuadratureSpec& q) {
  const auto f = [&m](double r) {
    const double u = m.u(r);
    return r * r * u * u;
  };
  const double fm2 = integrate_half_line(f, 0.0, q, 1.0 / m.kappa_per_fm()).value;
  return fm2 * kCmPerFm * kCmPerFm;
}

SpectrumDensity spectrum_density(const BoundStateModel& m, double k_per_fm,
                                 const QuadratureSpec& q) {
  if (!std::isfinite(k_per_fm) || k_per_fm < 0.0) {
    throw DomainError("spectrum momentum must be >= 0, got " + std::to_string(k_per_fm));
  }
  if (k_per_fm == 0.0) return {0.0, 0.0};
  const auto f = [&m, k_per_fm](double r) { return sph_j1(k_per_fm * r) * r * r * m.u(r); };
  // Beyond 50/kappa the tail is below 1e-18 of the integral. Panels no wider
  // than half a Bessel period keep the oscillations from piling up in a few
  // panels at large k.
  const double inv_kappa = 1.0 / m.kappa_per_fm();
  const double r_max = 50.0 * inv_kappa;
  const double width = std::min(std::numbers::pi / k_per_fm, inv_kappa);
  const auto panels = static_cast<std::size_t>(std::ceil(r_max / width));
  std::vector<double> breakpoints(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i) {
    breakpoints[i] = r_max * static_cast<double>(i) / static_cast<double>(panels);
  }
  // Each oscillation panel gets a bisection budget on top of the caller's.
  QuadratureSpec spec = q;
  spec.max_subdivisions += static_cast<int>(panels);
  const double transform = integrate(f, breakpoints, spec).value;
  return {k_per_fm, (2.0 / std::numbers::pi) * k_per_fm * k_per_fm * transform * transform};
}

std::vector<SpectrumDensity> spectrum_grid(const BoundStateModel& m,
                                           const std::vector<double>& k_per_fm) {
  for (double k : k_per_fm) {
    if (!std::isfinite(k) || k < 0.0) throw DomainError("spectrum grid momenta must be >= 0");
  }
  std::vector<double> density(k_per_fm.size());
  simd::active_kernels().two_exponential_spectrum(m.shape(), k_per_fm, density);
  std::vector<SpectrumDensity> out(k_per_fm.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {k_per_fm[i], density[i]};
  return out;
}

std::vector<double> default_k_grid(const BoundStateModel& m, int points, double lo_factor,
                                   double hi_factor) {
  if (points < 2 || !(lo_factor > 0.0) || !(hi_factor > lo_factor)) {
    throw DomainError("k grid needs at least 2 points and 0 < lo < hi");
  }
  const double log_lo = std::log(lo_factor * m.kappa_per_fm());
  const double log_hi = std::log(hi_factor * m.kappa_per_fm());
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    grid[static_cast<std::size_t>(i)] = std::exp(log_lo + t * (log_hi - log_lo));
  }
  return grid;
}

double dipole_angular_overlap(int l, const QuadratureSpec& q) {
  if (l < 0) throw DomainError("partial-wave index must be >= 0");
  const auto f = [l](double x) { return std::legendre(static_cast<unsigned>(l), x) * x; };
  return 2.0 * std::numbers::pi * integrate(f, -1.0, 1.0, q).value;
}

}  // namespace cslbound
