#include "kdre/simd/dispatch.hpp"

#include <stdexcept>
#include <string>

#include "simd/variants.hpp"

namespace kdre::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::automatic: return "auto";
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

Isa parse_isa(std::string_view name) {
  if (name == "auto") return Isa::automatic;
  if (name == "scalar") return Isa::scalar;
  if (name == "avx2") return Isa::avx2;
  if (name == "neon") return Isa::neon;
  throw std::invalid_argument("unknown ISA '" + std::string(name) + "'");
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::automatic:
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() noexcept {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa resolve(Isa requested) {
  if (requested == Isa::automatic) return best_isa();
  if (!isa_available(requested))
    throw std::invalid_argument("ISA '" + std::string(isa_name(requested)) +
                                "' is not available on this CPU");
  return requested;
}

const KernelTable& kernels(Isa requested) {
  static const KernelTable scalar{Isa::scalar, &detail::nw_sums_scalar, &detail::gauss_sum_scalar};
#if defined(__x86_64__) || defined(_M_X64)
  static const KernelTable avx2{Isa::avx2, &detail::nw_sums_avx2, &detail::gauss_sum_avx2};
#endif
#if defined(__aarch64__)
  static const KernelTable neon{Isa::neon, &detail::nw_sums_neon, &detail::gauss_sum_neon};
#endif
  switch (resolve(requested)) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return avx2;
#endif
#if defined(__aarch64__)
    case Isa::neon: return neon;
#endif
    default: return scalar;
  }
}

}  // namespace kdre::simd
