#include "cslbound/rates.hpp"

#include <cmath>
#include <string>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

double require_g_n(const CollapseParams& p) {
  if (!p.g_n) throw DomainError("g_n must be set for deuteron rates");
  return *p.g_n;
}

}  // namespace

void Exposure::validate() const {
  if (!(live_time_yr > 0.0) || !(volume_1e3_m3 > 0.0) || !(deuteron_density_per_cc > 0.0) ||
      !std::isfinite(live_time_yr) || !std::isfinite(volume_1e3_m3) ||
      !std::isfinite(deuteron_density_per_cc)) {
    throw DomainError("exposure requires positive live time, volume and deuteron density");
  }
}

ExcitationRate general_rate(const CollapseParams& p, MatrixElementSq me) {
  if (!std::isfinite(me.cm2)) throw DomainError("matrix element must be finite");
  return {0.5 * lambda_over_a2(p).value() * me.cm2};
}

RelativeCoordinateWeights centre_of_mass_weights(const PhysicalConstants& pc) {
  // With the centre of mass fixed, r_p = -(M_n/M_p) r_n, so r = -(1 + M_n/M_p) r_n.
  const double ratio = pc.m_n_over_m_p;
  return {ratio / (1.0 + ratio), -1.0 / (1.0 + ratio)};
}

double relative_coupling_factor(double g_n, const PhysicalConstants& pc) {
  const double x = (g_n - pc.m_n_over_m_p) / (1.0 + pc.m_n_over_m_p);
  return x * x;
}

ExcitationRate deuteron_rate(const CollapseParams& p, double mean_square_radius_cm2,
                             const PhysicalConstants& pc) {
  const double g_n = require_g_n(p);
  const double factor = relative_coupling_factor(g_n, pc);
  return general_rate(p, MatrixElementSq{factor * mean_square_radius_cm2});
}

ExcitationRate deuteron_rate(const CollapseParams& p, const BoundStateModel& m,
                             const PhysicalConstants& pc, const QuadratureSpec& q) {
  return deuteron_rate(p, mean_square_radius_cm2(m, q), pc);
}

double deuteron_spectrum_prefactor(const CollapseParams& p, const PhysicalConstants& pc) {
  const double g_n = require_g_n(p);
  return 0.5 * lambda_over_a2(p).value() * relative_coupling_factor(g_n, pc) * kCmPerFm * kCmPerFm;
}

double deuteron_spectrum(const CollapseParams& p, const BoundStateModel& m, double k_per_fm,
                         const PhysicalConstants& pc, const QuadratureSpec& q) {
  const double prefactor = deuteron_spectrum_prefactor(p, pc);
  if (prefactor == 0.0) return 0.0;
  return prefactor * spectrum_density(m, k_per_fm, q).density_fm3;
}

double count_coefficient(const Exposure& exposure, double mean_square_radius_cm2,
                         const PhysicalConstants& pc) {
  exposure.validate();
  const double unit_factor = 1.0 / ((1.0 + pc.m_n_over_m_p) * (1.0 + pc.m_n_over_m_p));
  const double unit_rate =
      general_rate(grw_defaults(), MatrixElementSq{unit_factor * mean_square_radius_cm2}).per_sec;
  return unit_rate * exposure.deuteron_density_per_cc * kCubicMetresPerVolumeUnit *
         kCcPerCubicMetre * pc.seconds_per_year;
}

CountPrediction expected_count(const CollapseParams& p, const Exposure& exposure,
                               double mean_square_radius_cm2, const PhysicalConstants& pc) {
  exposure.validate();
  const double deuterons = exposure.deuteron_density_per_cc * exposure.volume_1e3_m3 *
                           kCubicMetresPerVolumeUnit * kCcPerCubicMetre;
  const double seconds = exposure.live_time_yr * pc.seconds_per_year;
  const double expected =
      deuteron_rate(p, mean_square_radius_cm2, pc).per_sec * deuterons * seconds;
  return {expected, count_coefficient(exposure, mean_square_radius_cm2, pc)};
}

CountPrediction expected_count(const CollapseParams& p, const Exposure& exposure,
                               const BoundStateModel& m, const PhysicalConstants& pc,
                               const QuadratureSpec& q) {
  return expected_count(p, exposure, mean_square_radius_cm2(m, q), pc);
}

}  // namespace cslbound
