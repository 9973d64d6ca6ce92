#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cslbound/constants.hpp"
#include "cslbound/deuteron.hpp"
#include "cslbound/rates.hpp"
#include "cslbound/uncertainty.hpp"

namespace cslbound {

struct ObservedCounts {
  double value = 1344.2;
  ErrorPair stat{69.8, 69.0};
  ErrorPair syst{98.1, 96.8};

  bool operator==(const ObservedCounts&) const = default;
};

/// Heavy-water counting experiment. Defaults are the 254.2-day SNO
/// neutral-current run with the 5.5 m fiducial cut.
struct ExperimentConfig {
  double live_time_days = 254.2;
  double fiducial_radius_m = 5.5;
  double deuteron_density_per_cc = kHeavyWaterDeuteronsPerCc;
  double efficiency = 0.40;
  ObservedCounts observed{};
  AsymmetricValue ssm_rate_per_day{13.0, 2.6, 2.08};

  void validate() const;

  double live_time_yr(const PhysicalConstants& pc = PhysicalConstants::standard()) const;
  /// (4 pi / 3) r^3 in units of 10^3 m^3.
  double fiducial_volume_1e3_m3() const;
  Exposure exposure(const PhysicalConstants& pc = PhysicalConstants::standard()) const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// The "just visible" sphere whose superposition must collapse within the
/// time budget perception_time_s * collapse_margin.
struct SphereVisibilityConfig {
  double diameter_cm = 4e-5;
  double nucleon_count = 2e10;
  double perception_time_s = 0.1;
  double collapse_margin = 1.0;

  void validate() const;
  double volume_cm3() const;
  double time_budget_s() const { return perception_time_s * collapse_margin; }

  bool operator==(const SphereVisibilityConfig&) const = default;
};

struct ScanConfig {
  double min = 1e-11;
  double max = 10.0;
  int points = 121;
  bool log_spacing = true;

  void validate() const;
  std::vector<double> grid() const;

  bool operator==(const ScanConfig&) const = default;
};

/// Experimental inputs that are quoted rather than derived here.
struct LimitSettings {
  double fu_ceiling = 2.5;               // s^-1 cm^-2, Ge radiation limit
  double ge_bound_coefficient = 12.0;    // |g_e - M_e/M_p| < coeff * M_e/M_p at GRW
  double reference_r2_cm2 = 9e-26;       // (3e-13 cm)^2
  double model_spread_tolerance = 0.10;  // relative
};

struct CountBreakdown {
  AsymmetricValue n_expt;
  AsymmetricValue n_ssm;
  AsymmetricValue n_csl;
};

/// Observed counts (stat and syst in quadrature) over efficiency, minus the
/// solar-model prediction accumulated over the live time.
CountBreakdown net_csl_counts(const ExperimentConfig& e);

struct CouplingBound {
  double value;
  double rounded;  // rounded up to one significant digit
};

/// Smallest one-significant-digit number >= x (0.0074 -> 0.008). x >= 0.
double round_up_one_significant(double x);

/// Bound on |g_n - M_n/M_p| from a count limit:
/// sqrt(n_limit / (coefficient t v)) * sqrt((lambda/a^2)_GRW / ld).
CouplingBound neutron_coupling_bound(double n_limit, RateDensity ld, double coefficient,
                                     double t_yr, double v_1e3_m3);

struct ElectronBound {
  double deviation;  // bound on |g_e - M_e/M_p|
  double ceiling;    // M_e/M_p + deviation
};

ElectronBound electron_coupling_bound(RateDensity ld,
                                      const PhysicalConstants& pc = PhysicalConstants::standard(),
                                      double coefficient = LimitSettings{}.ge_bound_coefficient);

/// Floor for a >> d/2: lambda/a^2 > 4 / (budget N^2 d^2).
RateDensity visibility_floor_large_a(const SphereVisibilityConfig& s);

/// Floor for a << d/2: lambda/a^2 > V / (budget N^2 a^5 (4 pi)^(3/2)).
RateDensity visibility_floor_small_a(const SphereVisibilityConfig& s, double a_cm);

/// Coefficient C of the small-a floor C / a^5.
double visibility_small_a_coefficient(const SphereVisibilityConfig& s);

enum class VisibilityRegime { LargeA, SmallA, Intermediate };
std::string_view regime_name(VisibilityRegime r) noexcept;
VisibilityRegime visibility_regime(const SphereVisibilityConfig& s, double a_cm);

struct ExclusionPoint {
  double lambda_over_a2;
  double gn_bound;
  double ge_bound;
};

struct ExclusionCurve {
  std::vector<ExclusionPoint> points;
  double theoretical_floor;
  double experimental_ceiling;
};

struct ScanInputs {
  ExperimentConfig experiment{};
  SphereVisibilityConfig sphere{};
  ScanConfig scan{};
  double a_cm = 1e-5;  // localization length used for the small-a floor
  double n_sigma = 1.0;
  LimitSettings settings{};
};

ExclusionCurve scan_exclusion(const ScanInputs& in, const BoundStateModel& m,
                              const PhysicalConstants& pc = PhysicalConstants::standard(),
                              const QuadratureSpec& q = {});

struct AnalysisInputs {
  CollapseParams collapse = grw_defaults();
  ExperimentConfig experiment{};
  SphereVisibilityConfig sphere{};
  ScanConfig scan{};
  double n_sigma = 1.0;
  LimitSettings settings{};
};

struct AnalysisReport {
  AsymmetricValue n_expt;
  AsymmetricValue n_ssm;
  AsymmetricValue n_csl;
  double n_sigma;
  double n_limit;

  double live_time_yr;
  double volume_1e3_m3;
  double count_coefficient;

  double gn_bound_at_grw;
  double paper_rounded_bound;
  double lambda_over_a2;  // configured collapse strength
  double gn_bound_at_config;

  double ge_bound_at_grw;
  double ge_ceiling_at_grw;
  double strength_ratio;  // fractional electron bound / fractional neutron bound

  double floor_large_a;
  double floor_small_a;
  VisibilityRegime regime;
  ExclusionCurve curve;

  ModelKind model_kind;
  double model_kappa_per_fm;
  double model_r2_cm2;

  std::optional<CountPrediction> prediction;  // present when g_n is configured
  std::vector<std::string> warnings;
};

AnalysisReport run_full_analysis(const AnalysisInputs& in, const BoundStateModel& m,
                                 const PhysicalConstants& pc = PhysicalConstants::standard(),
                                 const QuadratureSpec& q = {});

}  // namespace cslbound
