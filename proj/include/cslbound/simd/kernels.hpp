#pragma once

// Data-parallel inner loops used by grid evaluations (spectra, exclusion
// scans). Every kernel has a scalar reference; vector variants are selected
// at runtime and must agree with the reference to within a few ulp.

#include <span>
#include <string_view>
#include <vector>

namespace cslbound::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

/// u(r) = norm * (exp(-kappa r) - weight * exp(-beta r)), lengths in fm.
/// weight = 0 gives the zero-range shape.
struct TwoExponential {
  double norm;
  double kappa;
  double beta;
  double weight;
};

struct KernelTable {
  Isa isa;

  /// out[i] = coefficient / sqrt(x[i]).
  void (*inverse_sqrt_scale)(double coefficient, std::span<const double> x,
                             std::span<double> out);

  /// out[i] = (2/pi) k^2 |int_0^inf j1(k r) r^2 u(r) dr|^2 for the
  /// two-exponential wavefunction, evaluated in closed form.
  void (*two_exponential_spectrum)(const TwoExponential& wf, std::span<const double> k,
                                   std::span<double> out);

  /// Trapezoid rule over a (possibly non-uniform) abscissa.
  double (*trapezoid)(std::span<const double> x, std::span<const double> y);
};

const KernelTable& scalar_kernels() noexcept;
#if defined(CSLBOUND_HAVE_AVX2)
const KernelTable& avx2_kernels() noexcept;
#endif
#if defined(CSLBOUND_HAVE_NEON)
const KernelTable& neon_kernels() noexcept;
#endif

/// ISAs compiled in and supported by the running CPU, Scalar first.
std::vector<Isa> available_isas();

/// Table for a specific ISA; throws DomainError if it is unavailable.
const KernelTable& kernels_for(Isa isa);

/// Best available table. The CSLBOUND_ISA environment variable
/// (scalar|avx2|neon) forces a choice when that ISA is available.
const KernelTable& active_kernels();

}  // namespace cslbound::simd
