#include "cslbound/constants.hpp"

#include <cmath>
#include <string>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError(std::string(name) + " must be finite and positive, got " +
                      std::to_string(value));
  }
}

}  // namespace

PhysicalConstants PhysicalConstants::standard() noexcept {
  PhysicalConstants pc{};
  pc.m_e_over_m_p = 1.0 / 1836.15267;
  pc.m_n_over_m_p = 1.00137842;
  pc.hbar_c_mev_fm = 197.3270;
  pc.reduced_mass_np_mev = 469.459;
  pc.seconds_per_day = 86400.0;
  pc.seconds_per_year = 365.0 * pc.seconds_per_day;
  return pc;
}

void PhysicalConstants::validate() const {
  require_positive(m_e_over_m_p, "m_e_over_m_p");
  require_positive(m_n_over_m_p, "m_n_over_m_p");
  require_positive(hbar_c_mev_fm, "hbar_c");
  require_positive(reduced_mass_np_mev, "reduced_mass_np");
  require_positive(seconds_per_day, "seconds_per_day");
  require_positive(seconds_per_year, "seconds_per_year");
  if (seconds_per_year != 365.0 * seconds_per_day) {
    throw DomainError("seconds_per_year must equal 365 * seconds_per_day");
  }
}

void CollapseParams::validate() const {
  require_positive(lambda_per_sec, "lambda");
  require_positive(a_cm, "a");
  if (g_e && !(std::isfinite(*g_e) && *g_e >= 0.0)) {
    throw DomainError("g_e must be finite and >= 0");
  }
  if (g_n && !(std::isfinite(*g_n) && *g_n >= 0.0)) {
    throw DomainError("g_n must be finite and >= 0");
  }
}

RateDensity::RateDensity(double lambda_over_a2) : value_(lambda_over_a2) {
  require_positive(lambda_over_a2, "lambda/a^2");
}

CollapseParams grw_defaults() noexcept {
  return CollapseParams{1e-16, 1e-5, std::nullopt, std::nullopt};
}

RateDensity lambda_over_a2(const CollapseParams& params) {
  params.validate();
  return RateDensity(params.lambda_per_sec / params.a_cm / params.a_cm);
}

RateDensity grw_lambda_over_a2() { return lambda_over_a2(grw_defaults()); }

}  // namespace cslbound
