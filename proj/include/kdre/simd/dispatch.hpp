#pragma once

// Runtime-selected inner loops. Every variant implements the same contract
// as the scalar reference in src/simd/reference.cpp; the vector variants
// accumulate lane-wise and so agree with the reference to rounding, not
// bit-for-bit. Within one variant results are deterministic.

#include <cstddef>
#include <span>
#include <string_view>

namespace kdre::simd {

enum class Isa { automatic, scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;
Isa parse_isa(std::string_view name);

bool isa_available(Isa isa) noexcept;
//! Best variant supported by the running CPU.
Isa best_isa() noexcept;
//! Maps automatic to best_isa(); throws std::invalid_argument when the
//! requested variant is not available on this CPU or build.
Isa resolve(Isa requested);

//! Kernel values strictly below this are flushed to zero.
inline constexpr double kKernelFloor = 1e-300;

//! One Nadaraya-Watson level: weights are norm * exp(-|(y_j - z)/eps|^2)
//! over the conditioning columns, flushed below kKernelFloor.
struct NwQuery {
  std::span<const double* const> cond_cols;  // conditioning columns of Y, each of length m
  std::span<const double> z_cond;            // matching coordinates of z
  const double* target_col = nullptr;        // column whose indicator is summed
  double z_target = 0.0;
  double eps = 1.0;
  double norm = 1.0;
  std::size_t m = 0;
};

struct NwSums {
  double weighted = 0.0;  // sum_j k_j * 1(target_j <= z_target)
  double total = 0.0;     // sum_j k_j
};

using NwSumsFn = NwSums (*)(const NwQuery&);

//! sum_i exp(-0.5 * |(z - x_i)/h|^2) over the n points given column-wise.
using GaussSumFn = double (*)(std::span<const double* const> cols, std::span<const double> z,
                              double h, std::size_t n);

struct KernelTable {
  Isa isa;
  NwSumsFn nw_sums;
  GaussSumFn gauss_sum;
};

const KernelTable& kernels(Isa requested = Isa::automatic);

}  // namespace kdre::simd
