#include <doctest.h>

#include <cmath>
#include <random>

#include "cslbound/errors.hpp"
#include "cslbound/limits.hpp"

using namespace cslbound;

namespace {

const PhysicalConstants kPc = PhysicalConstants::standard();
const BoundStateModel kZeroRange = BoundStateModel::zero_range(kDeuteronBindingEnergyMev);

// Independently evaluated pipeline values (25-digit arithmetic).
constexpr double kCoefficient = 24462184.6744447957;
constexpr double kCoefficientTimesExposure = 11872839.5850041957;
constexpr double kNLimit = 664.3074047839984;
constexpr double kBoundAtGrw = 0.00748009729186180242;

}  // namespace

TEST_CASE("experiment geometry and exposure") {
  const ExperimentConfig e;
  CHECK(e.live_time_yr() == doctest::Approx(254.2 / 365.0).epsilon(1e-15));
  CHECK(e.fiducial_volume_1e3_m3() == doctest::Approx(0.696909970321335800).epsilon(1e-14));
  CHECK(std::abs(e.fiducial_volume_1e3_m3() - 0.70) < 0.005);
  ExperimentConfig bad = e;
  bad.efficiency = 0.0;
  CHECK_THROWS_WITH_AS(bad.validate(), "efficiency must be in (0,1]", DomainError);
  bad.efficiency = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = e;
  bad.live_time_days = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("net CSL counts for the SNO run") {
  const auto c = net_csl_counts(ExperimentConfig{});
  CHECK(std::abs(c.n_expt.central() - 3361.0) <= 2.0);
  CHECK(std::abs(c.n_expt.err_up() - 300.0) <= 2.0);
  CHECK(std::abs(c.n_expt.err_down() - 298.0) <= 2.0);
  CHECK(std::abs(c.n_ssm.central() - 3305.0) <= 1.0);
  CHECK(std::abs(c.n_ssm.err_up() - 661.0) <= 1.0);
  CHECK(std::abs(c.n_ssm.err_down() - 529.0) <= 1.0);
  CHECK(std::abs(c.n_csl.central() - 56.0) <= 2.0);
  CHECK(std::abs(c.n_csl.err_up() - 608.0) <= 2.0);
  CHECK(std::abs(c.n_csl.err_down() - 725.0) <= 2.0);
  CHECK(one_sided_upper_limit(c.n_csl, 1.0) == doctest::Approx(kNLimit).epsilon(1e-12));
}

TEST_CASE("null experiment and efficiency scaling") {
  ExperimentConfig e;
  e.observed = {0.0, {}, {}};
  e.ssm_rate_per_day = AsymmetricValue(0.0, 0.0, 0.0);
  const auto c = net_csl_counts(e);
  CHECK(c.n_csl == AsymmetricValue(0.0, 0.0, 0.0));

  ExperimentConfig lo;
  ExperimentConfig hi;
  hi.efficiency = 2.0 * lo.efficiency;
  CHECK(net_csl_counts(hi).n_expt.central() ==
        doctest::Approx(0.5 * net_csl_counts(lo).n_expt.central()));
}

TEST_CASE("round up to one significant digit") {
  CHECK(round_up_one_significant(0.0074) == 0.008);
  CHECK(round_up_one_significant(kBoundAtGrw) == 0.008);
  CHECK(round_up_one_significant(0.008) == 0.008);
  CHECK(round_up_one_significant(0.0081) == 0.009);
  CHECK(round_up_one_significant(0.0095) == 0.01);
  CHECK(round_up_one_significant(0.748) == 0.8);
  CHECK(round_up_one_significant(12.0) == 20.0);
  CHECK(round_up_one_significant(3.0) == 3.0);
  CHECK(round_up_one_significant(0.0) == 0.0);
  CHECK_THROWS_AS(round_up_one_significant(-1.0), DomainError);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> e(-12.0, 12.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::pow(10.0, e(rng));
    const double r = round_up_one_significant(x);
    CHECK(r >= x);
    CHECK(r <= 10.0 * x);
  }
}

TEST_CASE("neutron coupling bound") {
  const Exposure ex = ExperimentConfig{}.exposure();
  const auto b = neutron_coupling_bound(kNLimit, grw_lambda_over_a2(), kCoefficient,
                                        ex.live_time_yr, ex.volume_1e3_m3);
  CHECK(b.value == doctest::Approx(kBoundAtGrw).epsilon(1e-10));
  CHECK(b.rounded == 0.008);
  CHECK(kCoefficient * ex.live_time_yr * ex.volume_1e3_m3 ==
        doctest::Approx(kCoefficientTimesExposure).epsilon(1e-12));

  // The quoted 664 with the rounded coefficient 1.2e7 per unit exposure.
  const double quoted = neutron_coupling_bound(664.0, grw_lambda_over_a2(), 1.2e7, 1.0, 1.0).value;
  CHECK(quoted == doctest::Approx(0.0074386).epsilon(1e-4));

  CHECK(neutron_coupling_bound(0.0, grw_lambda_over_a2(), kCoefficient, 1.0, 1.0).value == 0.0);
  const double low = neutron_coupling_bound(kNLimit, RateDensity(1e-10), kCoefficient,
                                            ex.live_time_yr, ex.volume_1e3_m3)
                         .value;
  CHECK(low >= 0.74);
  CHECK(low <= 0.80);
  CHECK_THROWS_AS(neutron_coupling_bound(-1.0, grw_lambda_over_a2(), kCoefficient, 1.0, 1.0),
                  DomainError);
  CHECK_THROWS_AS(neutron_coupling_bound(1.0, grw_lambda_over_a2(), 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("bound and expected count round-trip") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> le(-10.0, 0.4);
  std::uniform_real_distribution<double> nl(1.0, 1e5);
  const Exposure ex = ExperimentConfig{}.exposure();
  const double r2 = mean_square_radius_cm2(kZeroRange);
  const double coefficient = count_coefficient(ex, r2);
  for (int i = 0; i < 50; ++i) {
    const double ld = std::pow(10.0, le(rng));
    const double n_limit = nl(rng);
    const double b = neutron_coupling_bound(n_limit, RateDensity(ld), coefficient, ex.live_time_yr,
                                            ex.volume_1e3_m3)
                         .value;
    // Choose (lambda, a) realising ld, and put g_n above mass proportionality by b.
    const double a = 1e-5;
    CollapseParams p{ld * a * a, a, {}, kPc.m_n_over_m_p + b};
    const double n = expected_count(p, ex, r2).expected_neutrons;
    // Storing g_n = M_n/M_p + b costs ulp(M_n/M_p) / b relative in the deviation.
    CHECK(std::abs(n - n_limit) <= 1e-9 * n_limit + 4e-16 * n_limit / (b * b));
  }
}

TEST_CASE("electron coupling bound") {
  const auto grw = electron_coupling_bound(grw_lambda_over_a2());
  CHECK(grw.deviation == doctest::Approx(12.0 * kPc.m_e_over_m_p).epsilon(1e-14));
  CHECK(std::abs(grw.deviation / 6.536e-3 - 1.0) < 1e-3);
  CHECK(grw.ceiling == doctest::Approx(13.0 * kPc.m_e_over_m_p).epsilon(1e-14));
  const auto quarter = electron_coupling_bound(RateDensity(4e-6));
  CHECK(quarter.deviation == doctest::Approx(0.5 * grw.deviation).epsilon(1e-14));
}

TEST_CASE("visibility floors") {
  const SphereVisibilityConfig s;
  CHECK(visibility_floor_large_a(s).value() == doctest::Approx(6.25e-11).epsilon(1e-12));
  CHECK(visibility_small_a_coefficient(s) == doctest::Approx(1.8806319451591876e-35).epsilon(1e-12));
  const double at_grw = visibility_floor_small_a(s, 1e-5).value();
  CHECK(at_grw >= 1.8e-10);
  CHECK(at_grw <= 2.1e-10);

  SphereVisibilityConfig heavy = s;
  heavy.nucleon_count *= 4.0;
  CHECK(visibility_floor_large_a(heavy).value() ==
        doctest::Approx(visibility_floor_large_a(s).value() / 16.0));
  SphereVisibilityConfig slow = s;
  slow.collapse_margin = 2.0;
  CHECK(visibility_floor_large_a(slow).value() ==
        doctest::Approx(visibility_floor_large_a(s).value() / 2.0));
  CHECK(visibility_floor_small_a(s, 2e-5).value() == doctest::Approx(at_grw / 32.0));
  CHECK_THROWS_AS(visibility_floor_small_a(s, 0.0), DomainError);
  SphereVisibilityConfig bad = s;
  bad.diameter_cm = 0.0;
  CHECK_THROWS_AS(visibility_floor_large_a(bad), DomainError);

  CHECK(visibility_regime(s, 1e-5) == VisibilityRegime::Intermediate);
  CHECK(visibility_regime(s, 1e-3) == VisibilityRegime::LargeA);
  CHECK(visibility_regime(s, 1e-7) == VisibilityRegime::SmallA);
}

TEST_CASE("scan grid") {
  ScanConfig s;
  const auto g = s.grid();
  REQUIRE(g.size() == 121);
  CHECK(g.front() == 1e-11);
  CHECK(g.back() == 10.0);
  CHECK(g[50] == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(g[10] == doctest::Approx(1e-10).epsilon(1e-12));
  s.log_spacing = false;
  s.min = 1.0;
  s.max = 3.0;
  s.points = 3;
  CHECK(s.grid() == std::vector<double>{1.0, 2.0, 3.0});
  s.max = 0.5;
  CHECK_THROWS_AS(s.grid(), DomainError);
  s.max = 3.0;
  s.points = 1;
  CHECK_THROWS_AS(s.grid(), DomainError);
}

TEST_CASE("exclusion scan") {
  ScanInputs in;
  const auto curve = scan_exclusion(in, kZeroRange);
  REQUIRE(curve.points.size() == 121);
  CHECK(curve.experimental_ceiling == 2.5);
  CHECK(curve.theoretical_floor == doctest::Approx(1.8806319451591876e-10).epsilon(1e-12));
  CHECK(curve.theoretical_floor <= curve.experimental_ceiling);

  const auto& at_grw = curve.points[50];
  CHECK(std::abs(at_grw.lambda_over_a2 / 1e-6 - 1.0) < 0.01);
  CHECK(at_grw.gn_bound == doctest::Approx(kBoundAtGrw).epsilon(1e-9));
  CHECK(at_grw.ge_bound == doctest::Approx(12.0 * kPc.m_e_over_m_p).epsilon(1e-9));

  const double invariant = curve.points.front().gn_bound * std::sqrt(curve.points.front().lambda_over_a2);
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    if (i > 0) {
      CHECK(p.lambda_over_a2 > curve.points[i - 1].lambda_over_a2);
      CHECK(p.gn_bound < curve.points[i - 1].gn_bound);
    }
    CHECK(std::abs(p.gn_bound * std::sqrt(p.lambda_over_a2) / invariant - 1.0) <= 1e-12);
  }

  in.scan.min = 1.0;
  in.scan.max = 1e-3;
  CHECK_THROWS_AS(scan_exclusion(in, kZeroRange), DomainError);

  ScanInputs tiny_a;
  tiny_a.a_cm = 1e-8;  // pushes the small-a floor above the ceiling
  CHECK_THROWS_AS(scan_exclusion(tiny_a, kZeroRange), DomainError);
}

TEST_CASE("full analysis with default inputs") {
  const auto r = run_full_analysis(AnalysisInputs{}, kZeroRange);
  CHECK(r.n_limit == doctest::Approx(kNLimit).epsilon(1e-12));
  CHECK(r.count_coefficient == doctest::Approx(kCoefficient).epsilon(1e-8));
  CHECK(r.gn_bound_at_grw == doctest::Approx(kBoundAtGrw).epsilon(1e-8));
  CHECK(r.paper_rounded_bound == 0.008);
  CHECK(r.paper_rounded_bound >= r.gn_bound_at_grw);
  CHECK(r.gn_bound_at_config == doctest::Approx(r.gn_bound_at_grw).epsilon(1e-12));
  CHECK(r.strength_ratio == doctest::Approx(1606.46854862085).epsilon(1e-8));
  CHECK(r.ge_ceiling_at_grw == doctest::Approx(13.0 * kPc.m_e_over_m_p));
  CHECK(r.regime == VisibilityRegime::Intermediate);
  CHECK_FALSE(r.prediction.has_value());
  for (const auto& w : r.warnings) CHECK(w.find("deviates") == std::string::npos);
}

TEST_CASE("full analysis options") {
  AnalysisInputs in;
  in.n_sigma = 0.0;
  CHECK(run_full_analysis(in, kZeroRange).n_limit == doctest::Approx(55.9).epsilon(1e-12));

  in = AnalysisInputs{};
  in.collapse.g_n = kPc.m_n_over_m_p + 0.01;
  const auto r = run_full_analysis(in, kZeroRange);
  REQUIRE(r.prediction.has_value());
  CHECK(r.prediction->expected_neutrons ==
        doctest::Approx(kCoefficientTimesExposure * 1e-4).epsilon(1e-8));

  const auto hu = run_full_analysis(AnalysisInputs{},
                                    BoundStateModel::hulthen(kDeuteronBindingEnergyMev, 6.163));
  bool warned = false;
  for (const auto& w : hu.warnings) warned = warned || w.find("deviates") != std::string::npos;
  CHECK(warned);
  CHECK(hu.model_r2_cm2 == doctest::Approx(1.48305008989344384e-25).epsilon(1e-9));

  AnalysisInputs outside;
  outside.collapse.lambda_per_sec = 1e-22;  // lambda/a^2 = 1e-12, below the visibility floor
  bool outside_warned = false;
  for (const auto& w : run_full_analysis(outside, kZeroRange).warnings) {
    outside_warned = outside_warned || w.find("outside the allowed window") != std::string::npos;
  }
  CHECK(outside_warned);
}

TEST_CASE("rounded-up bound never undercuts the computed bound") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> n(1400.0, 5000.0);
  for (int i = 0; i < 30; ++i) {
    AnalysisInputs in;
    in.experiment.observed.value = n(rng);
    const auto r = run_full_analysis(in, kZeroRange);
    CHECK(r.paper_rounded_bound >= r.gn_bound_at_grw);
  }
}
