// AArch64 Advanced SIMD variant; NEON is mandatory on this architecture so
// no runtime probe is needed.

#include <arm_neon.h>

#include <cmath>

#include "simd/variants.hpp"

namespace kdre::simd::detail {
namespace {

inline float64x2_t exp_neon(float64x2_t x) {
  x = vmaxq_f64(x, vdupq_n_f64(kExpMinArg));
  const float64x2_t n = vrndnq_f64(vmulq_f64(x, vdupq_n_f64(kLog2e)));
  float64x2_t r = vfmsq_f64(x, n, vdupq_n_f64(kLn2Hi));
  r = vfmsq_f64(r, n, vdupq_n_f64(kLn2Lo));
  float64x2_t p = vdupq_n_f64(kExpPoly[0]);
  for (std::size_t k = 1; k < std::size(kExpPoly); ++k)
    p = vfmaq_f64(vdupq_n_f64(kExpPoly[k]), p, r);
  int64x2_t e = vaddq_s64(vcvtq_s64_f64(n), vdupq_n_s64(1023));
  e = vshlq_n_s64(e, 52);
  return vmulq_f64(p, vreinterpretq_f64_s64(e));
}

inline float64x2_t mask_f64(float64x2_t v, uint64x2_t m) {
  return vreinterpretq_f64_u64(vandq_u64(vreinterpretq_u64_f64(v), m));
}

}  // namespace

NwSums nw_sums_neon(const NwQuery& q) {
  const std::size_t dims = q.cond_cols.size();
  const float64x2_t eps_v = vdupq_n_f64(q.eps);
  const float64x2_t norm_v = vdupq_n_f64(q.norm);
  const float64x2_t floor_v = vdupq_n_f64(kKernelFloor);
  const float64x2_t zt_v = vdupq_n_f64(q.z_target);
  float64x2_t total = vdupq_n_f64(0.0);
  float64x2_t weighted = vdupq_n_f64(0.0);

  std::size_t j = 0;
  for (; j + 2 <= q.m; j += 2) {
    float64x2_t sq = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < dims; ++k) {
      const float64x2_t u =
          vdivq_f64(vsubq_f64(vld1q_f64(q.cond_cols[k] + j), vdupq_n_f64(q.z_cond[k])), eps_v);
      sq = vfmaq_f64(sq, u, u);
    }
    float64x2_t kv = vmulq_f64(norm_v, exp_neon(vnegq_f64(sq)));
    kv = mask_f64(kv, vcgeq_f64(kv, floor_v));
    total = vaddq_f64(total, kv);
    weighted = vaddq_f64(weighted, mask_f64(kv, vcleq_f64(vld1q_f64(q.target_col + j), zt_v)));
  }

  NwSums out{vgetq_lane_f64(weighted, 0) + vgetq_lane_f64(weighted, 1),
             vgetq_lane_f64(total, 0) + vgetq_lane_f64(total, 1)};
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

double gauss_sum_neon(std::span<const double* const> cols, std::span<const double> z, double h,
                      std::size_t n) {
  const float64x2_t h_v = vdupq_n_f64(h);
  const float64x2_t min_arg = vdupq_n_f64(kExpMinArg);
  float64x2_t acc = vdupq_n_f64(0.0);

  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t sq = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const float64x2_t u = vdivq_f64(vsubq_f64(vdupq_n_f64(z[k]), vld1q_f64(cols[k] + i)), h_v);
      sq = vfmaq_f64(sq, u, u);
    }
    const float64x2_t arg = vmulq_f64(vdupq_n_f64(-0.5), sq);
    acc = vaddq_f64(acc, mask_f64(exp_neon(arg), vcgeq_f64(arg, min_arg)));
  }

  double sum = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
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
