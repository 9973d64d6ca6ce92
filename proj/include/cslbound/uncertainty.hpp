#pragma once

#include <string>

namespace cslbound {

/// One-sigma errors on either side of a central value. Both are >= 0.
struct ErrorPair {
  double up = 0.0;
  double down = 0.0;

  bool operator==(const ErrorPair&) const = default;
};

/// Central value with independent upward and downward one-sigma errors.
/// Negative centrals are allowed; errors are not.
class AsymmetricValue {
 public:
  AsymmetricValue() = default;
  AsymmetricValue(double central, double err_up, double err_down);
  AsymmetricValue(double central, ErrorPair errors)
      : AsymmetricValue(central, errors.up, errors.down) {}

  double central() const noexcept { return central_; }
  double err_up() const noexcept { return errors_.up; }
  double err_down() const noexcept { return errors_.down; }
  ErrorPair errors() const noexcept { return errors_; }

  bool operator==(const AsymmetricValue&) const = default;

 private:
  double central_ = 0.0;
  ErrorPair errors_{};
};

/// Quadrature sum of two independent error sources on the same measurement,
/// taken side by side.
ErrorPair combine_quadrature(ErrorPair a, ErrorPair b);

AsymmetricValue scale(const AsymmetricValue& v, double factor);

/// Sum of independent values; same-sided errors pair up.
AsymmetricValue add(const AsymmetricValue& a, const AsymmetricValue& b);

/// a - b. Because b enters with a minus sign, its downward error widens the
/// upward error of the result and vice versa.
AsymmetricValue subtract(const AsymmetricValue& a, const AsymmetricValue& b);

/// central + n_sigma * err_up. Never clipped at zero.
double one_sided_upper_limit(const AsymmetricValue& v, double n_sigma);

/// Total over `days` from a per-day rate.
AsymmetricValue from_rate_per_day(const AsymmetricValue& rate_per_day, double days);

/// "central +up/-down" with the given number of decimals.
std::string format_asymmetric(const AsymmetricValue& v, int decimals = 1);

}  // namespace cslbound
