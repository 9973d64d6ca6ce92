#pragma once

#include <string_view>
#include <vector>

#include "cslbound/constants.hpp"
#include "cslbound/quadrature.hpp"
#include "cslbound/simd/kernels.hpp"

namespace cslbound {

enum class ModelKind { ZeroRange, Hulthen };

std::string_view model_kind_name(ModelKind kind) noexcept;

inline constexpr double kDeuteronBindingEnergyMev = 2.224575;
inline constexpr double kDefaultHulthenBetaOverKappa = 6.163;

/// Normalized s-wave deuteron relative-motion wavefunction. Both kinds share
/// the form u(r) = norm * (exp(-kappa r) - w exp(-beta r)) with w = 0 for the
/// zero-range model and w = 1 for Hulthen. Lengths are in fm.
class BoundStateModel {
 public:
  static BoundStateModel zero_range(double binding_energy_mev,
                                    const PhysicalConstants& pc = PhysicalConstants::standard());
  static BoundStateModel hulthen(double binding_energy_mev, double beta_over_kappa,
                                 const PhysicalConstants& pc = PhysicalConstants::standard());

  ModelKind kind() const noexcept { return kind_; }
  double binding_energy_mev() const noexcept { return binding_energy_mev_; }
  double kappa_per_fm() const noexcept { return kappa_; }
  /// Short-range parameter; zero for the zero-range model.
  double beta_per_fm() const noexcept { return beta_; }
  double norm() const noexcept { return norm_; }

  /// Reduced radial wavefunction u(r), r in fm.
  double u(double r_fm) const noexcept;

  /// <r^2> from the closed-form exponential integrals, in fm^2.
  double analytic_mean_square_radius_fm2() const noexcept;

  simd::TwoExponential shape() const noexcept;

 private:
  BoundStateModel(ModelKind kind, double binding_energy, double kappa, double beta, double norm)
      : kind_(kind), binding_energy_mev_(binding_energy), kappa_(kappa), beta_(beta), norm_(norm) {}

  ModelKind kind_;
  double binding_energy_mev_;
  double kappa_;
  double beta_;
  double norm_;
};

/// kappa = sqrt(2 mu E_B) / (hbar c), in fm^-1.
double binding_wavenumber(double binding_energy_mev, const PhysicalConstants& pc);

/// Numerical int_0^inf u(r)^2 dr.
double normalization_integral(const BoundStateModel& m, const QuadratureSpec& q = {});

/// Numerical <r^2> = int_0^inf r^2 u(r)^2 dr, returned in cm^2.
double mean_square_radius_cm2(const BoundStateModel& m, const QuadratureSpec& q = {});

struct SpectrumDensity {
  double k_per_fm;
  double density_fm3;
};

/// k-resolved density whose integral over k is <r^2> (fm^2). Built from the
/// plane-wave dipole matrix element: only the l = 1 partial wave survives, so
///   density(k) = (2/pi) k^2 [int_0^inf j1(k r) r^2 u(r) dr]^2,
/// with the radial transform evaluated by adaptive quadrature.
SpectrumDensity spectrum_density(const BoundStateModel& m, double k_per_fm,
                                 const QuadratureSpec& q = {});

/// Closed-form density on a grid through the active SIMD kernel.
std::vector<SpectrumDensity> spectrum_grid(const BoundStateModel& m,
                                           const std::vector<double>& k_per_fm);

/// Logarithmic grid from lo_factor * kappa to hi_factor * kappa.
std::vector<double> default_k_grid(const BoundStateModel& m, int points = 200,
                                   double lo_factor = 0.01, double hi_factor = 20.0);

/// 2 pi int_{-1}^{1} P_l(x) x dx: the angular overlap of the z-component of r
/// acting on an s-state with the l-th partial wave of a plane wave along z.
/// Non-zero only for l = 1.
double dipole_angular_overlap(int l, const QuadratureSpec& q = {});

}  // namespace cslbound
