#include "cslbound/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "cslbound/errors.hpp"

namespace cslbound {

namespace {

// Kronrod abscissae on [0, 1]; odd indices are shared with the 7-point Gauss rule.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  double abs_value;  // Kronrod estimate of the integral of |f|

  // Error above the panel's own roundoff level; bisecting cannot remove the rest.
  double reducible() const {
    return std::max(0.0, error - 50.0 * std::numeric_limits<double>::epsilon() * abs_value);
  }
  bool operator<(const Panel& other) const { return reducible() < other.reducible(); }
};

double sample(const Integrand& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw QuadratureError("non-finite integrand value at x = " + std::to_string(x),
                          std::nan(""), std::nan(""));
  }
  return y;
}

Panel gauss_kronrod15(const Integrand& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double f_centre = sample(f, centre);
  double kronrod = kKronrodWeights[7] * f_centre;
  double gauss = kGaussWeights[3] * f_centre;
  double abs_sum = kKronrodWeights[7] * std::abs(f_centre);
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double left = sample(f, centre - dx);
    const double right = sample(f, centre + dx);
    const double pair = left + right;
    kronrod += kKronrodWeights[i] * pair;
    abs_sum += kKronrodWeights[i] * (std::abs(left) + std::abs(right));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return Panel{lo, hi, kronrod, std::abs(kronrod - gauss), std::abs(half) * abs_sum};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_subdivisions < 1) {
    throw DomainError("quadrature spec requires rel_tol > 0, abs_tol >= 0, max_subdivisions >= 1");
  }
}

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("integrate requires finite limits; use integrate_half_line");
  }
  spec.validate();
  if (lo == hi) return QuadratureResult{0.0, 0.0, 1};
  if (hi < lo) {
    QuadratureResult r = integrate(f, hi, lo, spec);
    r.value = -r.value;
    return r;
  }
  const double breakpoints[2] = {lo, hi};
  return integrate(f, breakpoints, spec);
}

QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (breakpoints.size() < 2) throw DomainError("integrate needs at least two breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!std::isfinite(breakpoints[i])) throw DomainError("breakpoints must be finite");
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1])) {
      throw DomainError("breakpoints must be strictly ascending");
    }
  }

  const int initial = static_cast<int>(breakpoints.size()) - 1;
  const int limit = initial + spec.max_subdivisions - 1;

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double total_error = 0.0;
  double total_reducible = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const Panel p = gauss_kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    total += p.value;
    total_error += p.error;
    total_reducible += p.reducible();
    panels.push(p);
  }

  auto converged = [&] {
    return total_reducible <= std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
  };

  while (!converged()) {
    if (static_cast<int>(panels.size()) >= limit) {
      throw QuadratureError("quadrature did not converge within " +
                                std::to_string(spec.max_subdivisions) + " subdivisions",
                            total, total_error);
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw QuadratureError("quadrature panel reached machine resolution", total, total_error);
    }
    const Panel left = gauss_kronrod15(f, worst.lo, mid);
    const Panel right = gauss_kronrod15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_reducible += left.reducible() + right.reducible() - worst.reducible();
    panels.push(left);
    panels.push(right);
  }

  // Re-sum in abscissa order to shed the drift of the incremental updates.
  const int count = static_cast<int>(panels.size());
  std::vector<Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  double value = 0.0;
  double error = 0.0;
  for (const Panel& p : all) {
    value += p.value;
    error += p.error;
  }
  return QuadratureResult{value, error, count};
}

QuadratureResult integrate_half_line(const Integrand& f, double lo,
                                     const QuadratureSpec& spec, double scale) {
  if (!std::isfinite(lo)) throw DomainError("integrate_half_line requires a finite lower limit");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("integrate_half_line scale must be finite and positive");
  }
  const Integrand mapped = [&f, lo, scale](double t) {
    const double one_minus = 1.0 - t;
    const double x = lo + scale * t / one_minus;
    const double jacobian = scale / (one_minus * one_minus);
    if (!std::isfinite(x) || !std::isfinite(jacobian)) return 0.0;
    const double y = f(x);
    // Decaying integrands underflow before the Jacobian overflows.
    return y == 0.0 ? 0.0 : y * jacobian;
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

}  // namespace cslbound
