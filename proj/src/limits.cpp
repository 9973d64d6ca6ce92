#include "cslbound/limits.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "cslbound/errors.hpp"
#include "cslbound/simd/kernels.hpp"

namespace cslbound {

namespace {

bool positive(double x) { return std::isfinite(x) && x > 0.0; }

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!positive(live_time_days)) throw DomainError("live_time_days must be > 0");
  if (!positive(fiducial_radius_m)) throw DomainError("fiducial_radius_m must be > 0");
  if (!positive(deuteron_density_per_cc)) throw DomainError("deuteron_density_per_cc must be > 0");
  if (!(efficiency > 0.0 && efficiency <= 1.0)) throw DomainError("efficiency must be in (0,1]");
  // Re-run the value invariants on the observed triple.
  (void)AsymmetricValue(observed.value, observed.stat);
  (void)AsymmetricValue(observed.value, observed.syst);
}

double ExperimentConfig::live_time_yr(const PhysicalConstants& pc) const {
  return live_time_days * pc.seconds_per_day / pc.seconds_per_year;
}

double ExperimentConfig::fiducial_volume_1e3_m3() const {
  const double r = fiducial_radius_m;
  return 4.0 * std::numbers::pi / 3.0 * r * r * r / kCubicMetresPerVolumeUnit;
}

Exposure ExperimentConfig::exposure(const PhysicalConstants& pc) const {
  return Exposure{live_time_yr(pc), fiducial_volume_1e3_m3(), deuteron_density_per_cc};
}

void SphereVisibilityConfig::validate() const {
  if (!positive(diameter_cm) || !positive(nucleon_count) || !positive(perception_time_s) ||
      !positive(collapse_margin)) {
    throw DomainError("sphere parameters must all be positive");
  }
}

double SphereVisibilityConfig::volume_cm3() const {
  return std::numbers::pi / 6.0 * diameter_cm * diameter_cm * diameter_cm;
}

void ScanConfig::validate() const {
  if (!positive(min) || !positive(max) || !(min < max)) {
    throw DomainError("scan range requires 0 < min < max");
  }
  if (points < 2) throw DomainError("scan requires at least 2 points");
}

std::vector<double> ScanConfig::grid() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(points));
  const double lo = log_spacing ? std::log10(min) : min;
  const double hi = log_spacing ? std::log10(max) : max;
  for (int i = 0; i < points; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    out[static_cast<std::size_t>(i)] = log_spacing ? std::pow(10.0, t) : t;
  }
  out.front() = min;
  out.back() = max;
  return out;
}

CountBreakdown net_csl_counts(const ExperimentConfig& e) {
  e.validate();
  const AsymmetricValue observed(e.observed.value,
                                 combine_quadrature(e.observed.stat, e.observed.syst));
  const AsymmetricValue n_expt = scale(observed, 1.0 / e.efficiency);
  const AsymmetricValue n_ssm = from_rate_per_day(e.ssm_rate_per_day, e.live_time_days);
  return {n_expt, n_ssm, subtract(n_expt, n_ssm)};
}

double round_up_one_significant(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("round-up needs a finite x >= 0");
  if (x == 0.0) return 0.0;
  const int exponent = static_cast<int>(std::floor(std::log10(x)));
  // Negative exponents divide by an exact power of ten, so 8/1000 lands on the
  // nearest double to 0.008.
  const double p = std::pow(10.0, std::abs(exponent));
  const auto value_of = [&](double digit) { return exponent < 0 ? digit / p : digit * p; };
  double digit = std::ceil(exponent < 0 ? x * p : x / p);
  // The scaled product can be off by an ulp either way; settle on the smallest
  // representable digit whose value is still >= x.
  if (digit > 1.0 && value_of(digit - 1.0) >= x) digit -= 1.0;
  if (value_of(digit) < x) digit += 1.0;
  return value_of(digit);
}

CouplingBound neutron_coupling_bound(double n_limit, RateDensity ld, double coefficient,
                                     double t_yr, double v_1e3_m3) {
  if (!(n_limit >= 0.0) || !std::isfinite(n_limit)) {
    throw DomainError("count limit must be >= 0, got " + std::to_string(n_limit));
  }
  if (!positive(coefficient)) throw DomainError("count coefficient must be positive");
  if (!positive(t_yr) || !positive(v_1e3_m3)) throw DomainError("exposure must be positive");
  const double grw = grw_lambda_over_a2().value();
  const double value =
      std::sqrt(n_limit / (coefficient * t_yr * v_1e3_m3)) * std::sqrt(grw / ld.value());
  return {value, round_up_one_significant(value)};
}

ElectronBound electron_coupling_bound(RateDensity ld, const PhysicalConstants& pc,
                                      double coefficient) {
  const double grw = grw_lambda_over_a2().value();
  const double deviation = coefficient * pc.m_e_over_m_p * std::sqrt(grw / ld.value());
  return {deviation, pc.m_e_over_m_p + deviation};
}

RateDensity visibility_floor_large_a(const SphereVisibilityConfig& s) {
  s.validate();
  const double nd = s.nucleon_count * s.diameter_cm;
  return RateDensity(4.0 / (s.time_budget_s() * nd * nd));
}

double visibility_small_a_coefficient(const SphereVisibilityConfig& s) {
  s.validate();
  const double four_pi_3_2 = std::pow(4.0 * std::numbers::pi, 1.5);
  return s.volume_cm3() / (s.time_budget_s() * s.nucleon_count * s.nucleon_count * four_pi_3_2);
}

RateDensity visibility_floor_small_a(const SphereVisibilityConfig& s, double a_cm) {
  if (!positive(a_cm)) throw DomainError("a must be positive");
  const double a2 = a_cm * a_cm;
  return RateDensity(visibility_small_a_coefficient(s) / (a2 * a2 * a_cm));
}

std::string_view regime_name(VisibilityRegime r) noexcept {
  switch (r) {
    case VisibilityRegime::LargeA:
      return "large-a";
    case VisibilityRegime::SmallA:
      return "small-a";
    case VisibilityRegime::Intermediate:
      return "intermediate";
  }
  return "unknown";
}

VisibilityRegime visibility_regime(const SphereVisibilityConfig& s, double a_cm) {
  const double ratio = a_cm / (0.5 * s.diameter_cm);
  if (ratio >= 10.0) return VisibilityRegime::LargeA;
  if (ratio <= 0.1) return VisibilityRegime::SmallA;
  return VisibilityRegime::Intermediate;
}

ExclusionCurve scan_exclusion(const ScanInputs& in, const BoundStateModel& m,
                              const PhysicalConstants& pc, const QuadratureSpec& q) {
  in.scan.validate();
  const CountBreakdown counts = net_csl_counts(in.experiment);
  const double n_limit = one_sided_upper_limit(counts.n_csl, in.n_sigma);
  const Exposure exposure = in.experiment.exposure(pc);
  const double coefficient = count_coefficient(exposure, mean_square_radius_cm2(m, q), pc);

  const double floor = std::max(visibility_floor_large_a(in.sphere).value(),
                                visibility_floor_small_a(in.sphere, in.a_cm).value());
  if (floor > in.settings.fu_ceiling) {
    throw DomainError("theoretical floor " + sci(floor) + " exceeds experimental ceiling " +
                      sci(in.settings.fu_ceiling));
  }

  // Both bounds are C / sqrt(lambda/a^2); evaluate the coefficients once at
  // unit strength and sweep the grid with the vector kernel.
  const RateDensity unit(1.0);
  const double gn_coeff =
      neutron_coupling_bound(n_limit, unit, coefficient, exposure.live_time_yr,
                             exposure.volume_1e3_m3)
          .value;
  const double ge_coeff = electron_coupling_bound(unit, pc, in.settings.ge_bound_coefficient).deviation;

  const std::vector<double> grid = in.scan.grid();
  std::vector<double> gn(grid.size());
  std::vector<double> ge(grid.size());
  const auto& kernels = simd::active_kernels();
  kernels.inverse_sqrt_scale(gn_coeff, grid, gn);
  kernels.inverse_sqrt_scale(ge_coeff, grid, ge);

  ExclusionCurve curve{{}, floor, in.settings.fu_ceiling};
  curve.points.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) curve.points.push_back({grid[i], gn[i], ge[i]});
  return curve;
}

AnalysisReport run_full_analysis(const AnalysisInputs& in, const BoundStateModel& m,
                                 const PhysicalConstants& pc, const QuadratureSpec& q) {
  in.collapse.validate();
  AnalysisReport r{};
  const CountBreakdown counts = net_csl_counts(in.experiment);
  r.n_expt = counts.n_expt;
  r.n_ssm = counts.n_ssm;
  r.n_csl = counts.n_csl;
  r.n_sigma = in.n_sigma;
  r.n_limit = one_sided_upper_limit(counts.n_csl, in.n_sigma);

  const Exposure exposure = in.experiment.exposure(pc);
  r.live_time_yr = exposure.live_time_yr;
  r.volume_1e3_m3 = exposure.volume_1e3_m3;
  r.model_kind = m.kind();
  r.model_kappa_per_fm = m.kappa_per_fm();
  r.model_r2_cm2 = mean_square_radius_cm2(m, q);
  r.count_coefficient = count_coefficient(exposure, r.model_r2_cm2, pc);

  const RateDensity grw = grw_lambda_over_a2();
  const RateDensity configured = lambda_over_a2(in.collapse);
  r.lambda_over_a2 = configured.value();

  const CouplingBound at_grw = neutron_coupling_bound(r.n_limit, grw, r.count_coefficient,
                                                      r.live_time_yr, r.volume_1e3_m3);
  r.gn_bound_at_grw = at_grw.value;
  r.paper_rounded_bound = at_grw.rounded;
  r.gn_bound_at_config = neutron_coupling_bound(r.n_limit, configured, r.count_coefficient,
                                                r.live_time_yr, r.volume_1e3_m3)
                             .value;

  const ElectronBound ge = electron_coupling_bound(grw, pc, in.settings.ge_bound_coefficient);
  r.ge_bound_at_grw = ge.deviation;
  r.ge_ceiling_at_grw = ge.ceiling;
  r.strength_ratio =
      (ge.deviation / pc.m_e_over_m_p) / (r.gn_bound_at_grw / pc.m_n_over_m_p);

  r.floor_large_a = visibility_floor_large_a(in.sphere).value();
  r.floor_small_a = visibility_floor_small_a(in.sphere, in.collapse.a_cm).value();
  r.regime = visibility_regime(in.sphere, in.collapse.a_cm);

  ScanInputs scan{in.experiment, in.sphere, in.scan, in.collapse.a_cm, in.n_sigma, in.settings};
  r.curve = scan_exclusion(scan, m, pc, q);

  if (in.collapse.g_n) {
    r.prediction = expected_count(in.collapse, exposure, r.model_r2_cm2, pc);
  }

  const double spread =
      std::abs(r.model_r2_cm2 - in.settings.reference_r2_cm2) / in.settings.reference_r2_cm2;
  if (spread > in.settings.model_spread_tolerance) {
    r.warnings.push_back(std::string(model_kind_name(m.kind())) + " model <r^2> = " +
                         sci(r.model_r2_cm2) + " cm^2 deviates from the reference (3e-13 cm)^2 by " +
                         sci(100.0 * spread) + "% (more than " +
                         sci(100.0 * in.settings.model_spread_tolerance) + "%)");
  }
  if (r.n_csl.central() < 0.0) {
    r.warnings.push_back("excess count central value is negative (" + sci(r.n_csl.central()) +
                         "); the limit uses only the upward error");
  }
  if (r.regime == VisibilityRegime::Intermediate) {
    r.warnings.push_back("a = " + sci(in.collapse.a_cm) + " cm is comparable to d/2 = " +
                         sci(0.5 * in.sphere.diameter_cm) +
                         " cm; both visibility floors are approximate");
  }
  if (r.lambda_over_a2 < r.curve.theoretical_floor || r.lambda_over_a2 > r.curve.experimental_ceiling) {
    r.warnings.push_back("configured lambda/a^2 = " + sci(r.lambda_over_a2) +
                         " lies outside the allowed window [" + sci(r.curve.theoretical_floor) +
                         ", " + sci(r.curve.experimental_ceiling) + "]");
  }
  return r;
}

}  // namespace cslbound
