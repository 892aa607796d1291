#pragma once

#include "kdre/simd/dispatch.hpp"

namespace kdre::simd::detail {

NwSums nw_sums_scalar(const NwQuery& q);
double gauss_sum_scalar(std::span<const double* const> cols, std::span<const double> z, double h,
                        std::size_t n);

#if defined(__x86_64__) || defined(_M_X64)
NwSums nw_sums_avx2(const NwQuery& q);
double gauss_sum_avx2(std::span<const double* const> cols, std::span<const double> z, double h,
                      std::size_t n);
#endif

#if defined(__aarch64__)
NwSums nw_sums_neon(const NwQuery& q);
double gauss_sum_neon(std::span<const double* const> cols, std::span<const double> z, double h,
                      std::size_t n);
#endif

// exp(x) on [-708, 0] by Cody-Waite reduction and a degree-13 Taylor
// polynomial; shared coefficients for the vector variants.
inline constexpr double kLog2e = 1.4426950408889634074;
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpMinArg = -708.0;
inline constexpr double kExpPoly[] = {
    1.0 / 6227020800.0,  // 1/13!
    1.0 / 479001600.0,   // 1/12!
    1.0 / 39916800.0,    // 1/11!
    1.0 / 3628800.0,     // 1/10!
    1.0 / 362880.0,      // 1/9!
    1.0 / 40320.0,       // 1/8!
    1.0 / 5040.0,        // 1/7!
    1.0 / 720.0,         // 1/6!
    1.0 / 120.0,         // 1/5!
    1.0 / 24.0,          // 1/4!
    1.0 / 6.0,           // 1/3!
    0.5,
    1.0,
    1.0,
};

}  // namespace kdre::simd::detail
