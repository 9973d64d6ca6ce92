#include "cslbound/uncertainty.hpp"

#include <cmath>
#include <cstdio>

#include "cslbound/errors.hpp"

namespace cslbound {

AsymmetricValue::AsymmetricValue(double central, double err_up, double err_down)
    : central_(central), errors_{err_up, err_down} {
  if (!std::isfinite(central)) throw DomainError("central value must be finite");
  if (!(err_up >= 0.0) || !(err_down >= 0.0) || !std::isfinite(err_up) ||
      !std::isfinite(err_down)) {
    throw DomainError("asymmetric errors must be finite and >= 0");
  }
}

ErrorPair combine_quadrature(ErrorPair a, ErrorPair b) {
  return {std::hypot(a.up, b.up), std::hypot(a.down, b.down)};
}

AsymmetricValue scale(const AsymmetricValue& v, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("scale factor must be finite and positive");
  }
  return {v.central() * factor, v.err_up() * factor, v.err_down() * factor};
}

AsymmetricValue add(const AsymmetricValue& a, const AsymmetricValue& b) {
  return {a.central() + b.central(), std::hypot(a.err_up(), b.err_up()),
          std::hypot(a.err_down(), b.err_down())};
}

AsymmetricValue subtract(const AsymmetricValue& a, const AsymmetricValue& b) {
  return {a.central() - b.central(), std::hypot(a.err_up(), b.err_down()),
          std::hypot(a.err_down(), b.err_up())};
}

double one_sided_upper_limit(const AsymmetricValue& v, double n_sigma) {
  if (!(n_sigma >= 0.0) || !std::isfinite(n_sigma)) {
    throw DomainError("n_sigma must be finite and >= 0");
  }
  return v.central() + n_sigma * v.err_up();
}

AsymmetricValue from_rate_per_day(const AsymmetricValue& rate_per_day, double days) {
  if (!(days > 0.0) || !std::isfinite(days)) throw DomainError("days must be positive");
  return scale(rate_per_day, days);
}

std::string format_asymmetric(const AsymmetricValue& v, int decimals) {
  // Round half away from zero (3360.5 -> 3361), unlike printf's round-half-even.
  const double p = std::pow(10.0, decimals);
  const auto r = [p](double x) { return std::round(x * p) / p; };
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.*f +%.*f/-%.*f", decimals, r(v.central()), decimals,
                r(v.err_up()), decimals, r(v.err_down()));
  return buf;
}

}  // namespace cslbound
