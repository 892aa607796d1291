#include "simd/variants.hpp"

#include <cmath>

namespace kdre::simd::detail {

NwSums nw_sums_scalar(const NwQuery& q) {
  NwSums out;
  const std::size_t dims = q.cond_cols.size();
  for (std::size_t j = 0; j < q.m; ++j) {
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

double gauss_sum_scalar(std::span<const double* const> cols, std::span<const double> z, double h,
                        std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
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
