#pragma once

#include "cslbound/constants.hpp"
#include "cslbound/deuteron.hpp"
#include "cslbound/quadrature.hpp"

namespace cslbound {

/// |<phi| sum_a g_a r_a |psi>|^2 in cm^2.
struct MatrixElementSq {
  double cm2;
};

struct ExcitationRate {
  double per_sec;
};

/// Exposure of a heavy-water target.
struct Exposure {
  double live_time_yr;
  double volume_1e3_m3;  // in units of 10^3 m^3
  double deuteron_density_per_cc;

  void validate() const;
};

struct CountPrediction {
  double expected_neutrons;
  /// Counts per unit (g_n - M_n/M_p)^2, per year, per 10^3 m^3, at GRW lambda/a^2
  /// and the exposure's deuteron density.
  double coefficient;
};

inline constexpr double kHeavyWaterDeuteronsPerCc = 2.0e23 / 3.0;

/// First-order collapse excitation rate (lambda / 2a^2) * |matrix element|^2.
ExcitationRate general_rate(const CollapseParams& p, MatrixElementSq me);

/// Coefficients (c_p, c_n) with g_p r_p + g_n r_n = (c_p + g_n c_n) r once the
/// centre of mass is pinned, r = r_p - r_n being the relative coordinate.
struct RelativeCoordinateWeights {
  double proton;
  double neutron;
};
RelativeCoordinateWeights centre_of_mass_weights(const PhysicalConstants& pc);

/// [(g_n - M_n/M_p) / (1 + M_n/M_p)]^2.
double relative_coupling_factor(double g_n, const PhysicalConstants& pc);

/// Total dissociation rate per deuteron from a supplied <r^2> (cm^2).
ExcitationRate deuteron_rate(const CollapseParams& p, double mean_square_radius_cm2,
                             const PhysicalConstants& pc = PhysicalConstants::standard());

ExcitationRate deuteron_rate(const CollapseParams& p, const BoundStateModel& m,
                             const PhysicalConstants& pc = PhysicalConstants::standard(),
                             const QuadratureSpec& q = {});

/// Rate density in s^-1 per fm^-1 at relative momentum k; integrates to
/// deuteron_rate over k.
double deuteron_spectrum(const CollapseParams& p, const BoundStateModel& m, double k_per_fm,
                         const PhysicalConstants& pc = PhysicalConstants::standard(),
                         const QuadratureSpec& q = {});

/// Conversion from the fm-valued spectrum density to the rate density.
double deuteron_spectrum_prefactor(const CollapseParams& p, const PhysicalConstants& pc);

/// Expected counts per unit (g_n - M_n/M_p)^2, year and 10^3 m^3 at GRW
/// lambda/a^2, for the exposure's deuteron density. Independent of live time
/// and volume.
double count_coefficient(const Exposure& exposure, double mean_square_radius_cm2,
                         const PhysicalConstants& pc = PhysicalConstants::standard());

CountPrediction expected_count(const CollapseParams& p, const Exposure& exposure,
                               double mean_square_radius_cm2,
                               const PhysicalConstants& pc = PhysicalConstants::standard());

CountPrediction expected_count(const CollapseParams& p, const Exposure& exposure,
                               const BoundStateModel& m,
                               const PhysicalConstants& pc = PhysicalConstants::standard(),
                               const QuadratureSpec& q = {});

}  // namespace cslbound
