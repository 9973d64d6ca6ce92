#pragma once

#include <functional>
#include <span>

namespace cslbound {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_subdivisions = 200;

  void validate() const;
};

struct QuadratureResult {
  double value;
  double error;      // estimated absolute error
  int subdivisions;  // number of panels in the final partition
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over [lo, hi].
/// The panel with the largest error estimate is bisected until the summed
/// error is at most max(rel_tol * |value|, abs_tol). Error below a panel's
/// roundoff level (50 eps times the integral of |f| over it) is not counted,
/// since no bisection can remove it; it still goes into the reported error.
/// That only matters for strongly cancelling integrands.
/// Throws QuadratureError on non-convergence or a non-finite sample.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// As integrate(), starting from the partition given by ascending
/// `breakpoints` (at least two). max_subdivisions bounds the bisections made
/// on top of that partition.
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureSpec& spec = {});

/// Integral over [lo, inf) via the rational map r = lo + scale * t / (1 - t).
/// `scale` should be a characteristic length of the integrand.
QuadratureResult integrate_half_line(const Integrand& f, double lo,
                                     const QuadratureSpec& spec = {},
                                     double scale = 1.0);

}  // namespace cslbound
