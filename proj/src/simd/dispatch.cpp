#include <cstdlib>
#include <string>

#include "cslbound/errors.hpp"
#include "cslbound/simd/kernels.hpp"

namespace cslbound::simd {

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(CSLBOUND_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(CSLBOUND_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_default() {
  if (const char* forced = std::getenv("CSLBOUND_ISA")) {
    const std::string name(forced);
    for (Isa isa : available_isas()) {
      if (isa_name(isa) == name) return kernels_for(isa);
    }
  }
  const auto isas = available_isas();
  return kernels_for(isas.back());
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!cpu_supports(isa)) {
    throw DomainError("kernel set '" + std::string(isa_name(isa)) + "' is not available");
  }
  switch (isa) {
#if defined(CSLBOUND_HAVE_AVX2)
    case Isa::Avx2:
      return avx2_kernels();
#endif
#if defined(CSLBOUND_HAVE_NEON)
    case Isa::Neon:
      return neon_kernels();
#endif
    default:
      return scalar_kernels();
  }
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_default();
  return table;
}

}  // namespace cslbound::simd
