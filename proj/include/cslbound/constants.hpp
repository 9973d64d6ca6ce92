#pragma once

#include <optional>

namespace cslbound {

// Internal unit system: lengths in cm, times in s, energies in MeV.
// Nuclear-scale quantities are carried in fm and converted at the boundary.
inline constexpr double kCmPerFm = 1e-13;
inline constexpr double kCcPerCubicMetre = 1e6;
inline constexpr double kCubicMetresPerVolumeUnit = 1e3;  // volumes reported in 10^3 m^3

/// Mass ratios and conversion factors shared by every downstream computation.
struct PhysicalConstants {
  double m_e_over_m_p;
  double m_n_over_m_p;
  double hbar_c_mev_fm;
  double reduced_mass_np_mev;
  double seconds_per_day;
  double seconds_per_year;

  /// CODATA-style reference values; a year is 365 days.
  static PhysicalConstants standard() noexcept;

  /// Throws DomainError if any value is non-finite or non-positive, or if the
  /// year/day convention is broken.
  void validate() const;

  bool operator==(const PhysicalConstants&) const = default;
};

/// Collapse-model parameters. The proton coupling is 1 by convention and is
/// never stored; g_e and g_n are optional because most bounds do not need them.
struct CollapseParams {
  double lambda_per_sec;
  double a_cm;
  std::optional<double> g_e;
  std::optional<double> g_n;

  void validate() const;

  bool operator==(const CollapseParams&) const = default;
};

/// The composite collapse strength lambda / a^2, in s^-1 cm^-2.
class RateDensity {
 public:
  explicit RateDensity(double lambda_over_a2);

  double value() const noexcept { return value_; }

  auto operator<=>(const RateDensity&) const = default;

 private:
  double value_;
};

/// GRW values: lambda = 1e-16 s^-1, a = 1e-5 cm, couplings unset.
CollapseParams grw_defaults() noexcept;

RateDensity lambda_over_a2(const CollapseParams& params);

/// lambda / a^2 at the GRW values.
RateDensity grw_lambda_over_a2();

}  // namespace cslbound
