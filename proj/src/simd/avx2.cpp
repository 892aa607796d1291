// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "simd/variants.hpp"

namespace kdre::simd::detail {
namespace {

inline __m256d exp_avx2(__m256d x) {
  x = _mm256_max_pd(x, _mm256_set1_pd(kExpMinArg));
  const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kLog2e)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Hi), x);
  r = _mm256_fnmadd_pd(n, _mm256_set1_pd(kLn2Lo), r);
  __m256d p = _mm256_set1_pd(kExpPoly[0]);
  for (std::size_t k = 1; k < std::size(kExpPoly); ++k)
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kExpPoly[k]));
  __m256i e = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
  e = _mm256_slli_epi64(_mm256_add_epi64(e, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(p, _mm256_castsi256_pd(e));
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

NwSums nw_sums_avx2(const NwQuery& q) {
  const std::size_t dims = q.cond_cols.size();
  const __m256d eps_v = _mm256_set1_pd(q.eps);
  const __m256d norm_v = _mm256_set1_pd(q.norm);
  const __m256d floor_v = _mm256_set1_pd(kKernelFloor);
  const __m256d zt_v = _mm256_set1_pd(q.z_target);
  __m256d total = _mm256_setzero_pd();
  __m256d weighted = _mm256_setzero_pd();

  std::size_t j = 0;
  for (; j + 4 <= q.m; j += 4) {
    __m256d sq = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dims; ++k) {
      const __m256d u = _mm256_div_pd(
          _mm256_sub_pd(_mm256_loadu_pd(q.cond_cols[k] + j), _mm256_set1_pd(q.z_cond[k])),
          eps_v);
      sq = _mm256_fmadd_pd(u, u, sq);
    }
    __m256d kv = _mm256_mul_pd(norm_v, exp_avx2(_mm256_sub_pd(_mm256_setzero_pd(), sq)));
    kv = _mm256_and_pd(kv, _mm256_cmp_pd(kv, floor_v, _CMP_GE_OQ));
    total = _mm256_add_pd(total, kv);
    const __m256d hit = _mm256_cmp_pd(_mm256_loadu_pd(q.target_col + j), zt_v, _CMP_LE_OQ);
    weighted = _mm256_add_pd(weighted, _mm256_and_pd(kv, hit));
  }

  NwSums out{hsum(weighted), hsum(total)};
  for (; j < q.m; ++j) {
    double sq = 0.0;
    for (std::size_t k = 0; k < dims; ++k) {
      const double u = (q.cond_cols[k][j] - q.z_cond[k]) / q.eps;
      sq += u * u;
    }
    double kv = q.norm * std::exp(-sq);
    if (kv < kKernelFloor) kv = 0.0;
    out.total += kv;
    if (q.target_col[j] <= q.z_target) out.weighted += kv;
  }
  return out;
}

double gauss_sum_avx2(std::span<const double* const> cols, std::span<const double> z, double h,
                      std::size_t n) {
  const __m256d h_v = _mm256_set1_pd(h);
  const __m256d half = _mm256_set1_pd(-0.5);
  const __m256d min_arg = _mm256_set1_pd(kExpMinArg);
  __m256d acc = _mm256_setzero_pd();

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d sq = _mm256_setzero_pd();
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const __m256d u =
          _mm256_div_pd(_mm256_sub_pd(_mm256_set1_pd(z[k]), _mm256_loadu_pd(cols[k] + i)), h_v);
      sq = _mm256_fmadd_pd(u, u, sq);
    }
    const __m256d arg = _mm256_mul_pd(half, sq);
    const __m256d e = exp_avx2(arg);
    acc = _mm256_add_pd(acc, _mm256_and_pd(e, _mm256_cmp_pd(arg, min_arg, _CMP_GE_OQ)));
  }

  double sum = hsum(acc);
  for (; i < n; ++i) {
    double sq = 0.0;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const double u = (z[k] - cols[k][i]) / h;
      sq += u * u;
    }
    sum += std::exp(-0.5 * sq);
  }
  return sum;
}

}  // namespace kdre::simd::detail
