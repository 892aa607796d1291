#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kdre/core.hpp"
#include "kdre/kernels.hpp"
#include "kdre/simd/dispatch.hpp"

namespace kdre {

//! Empirical CDF (1/m) #{j : y_j <= z}.
double ecdf(std::span<const double> y, double z) noexcept;

//! First level-1 coordinates of yj - z; level is 1-based in [2, d].
Point delta_projection(std::span<const double> yj, std::span<const double> z, std::size_t level);

struct WeightVector {
  std::vector<double> weights;
  bool fallback = false;
};

struct CdfValue {
  double value = 0.0;
  bool fallback = false;
};

//! Kernel estimator of the conditional CDFs H_l(z) = P(Y_l <= z_l | Y_1..Y_{l-1} = z_1..z_{l-1})
//! fitted on a Y sample. Level 1 is the plain empirical CDF of the first
//! coordinate; levels l >= 2 use Nadaraya-Watson weights
//! K~((y_j - z)_{1..l-1} / eps_{l-1}) normalized over the sample.
//!
//! When every weight at a level underflows (all kernel values below
//! simd::kKernelFloor) the level falls back to uniform weights and the result
//! carries fallback = true.
//!
//! An optional coordinate permutation reorders the factorization: internal
//! coordinate k is input coordinate permutation[k], and levels refer to the
//! permuted order.
class ConditionalCdfModel {
 public:
  struct Options {
    KernelFamily weight_kernel = KernelFamily::gaussian_radial;
    simd::Isa isa = simd::Isa::automatic;
    std::vector<std::size_t> permutation;  // 0-based; empty means identity
  };

  ConditionalCdfModel(const SampleSet& y, std::vector<double> epsilons);
  ConditionalCdfModel(const SampleSet& y, std::vector<double> epsilons, Options options);

  std::size_t dim() const noexcept { return columns_.size(); }
  std::size_t size() const noexcept { return m_; }
  const std::vector<double>& epsilons() const noexcept { return epsilons_; }
  simd::Isa isa() const noexcept { return table_->isa; }

  WeightVector weights(std::span<const double> z, std::size_t level) const;
  CdfValue conditional_cdf(std::span<const double> z, std::size_t level) const;

  //! Writes (H_1(z), ..., H_d(z)) into out; returns true if any level fell back.
  bool evaluate_into(std::span<const double> z, std::span<double> out) const;
  std::vector<double> evaluate(std::span<const double> z) const;

 private:
  std::vector<double> permute(std::span<const double> z) const;
  CdfValue level_value(std::span<const double> zp, std::size_t level) const;
  double uniform_cdf(std::size_t axis, double value) const noexcept;

  std::size_t m_ = 0;
  std::vector<double> epsilons_;
  std::vector<std::size_t> permutation_;
  std::vector<std::vector<double>> columns_;  // permuted order, sample order
  std::vector<std::vector<double>> sorted_;   // each column sorted ascending
  std::vector<const double*> column_ptrs_;
  KernelFamily weight_kernel_;
  const simd::KernelTable* table_;
};

WeightVector nw_weights(const ConditionalCdfModel& model, std::span<const double> z,
                        std::size_t level);
double conditional_cdf(const ConditionalCdfModel& model, std::span<const double> z,
                       std::size_t level);
std::vector<double> cdf_vector(const ConditionalCdfModel& model, std::span<const double> z);

}  // namespace kdre
