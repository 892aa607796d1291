#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kdre/cdf.hpp"
#include "kdre/core.hpp"
#include "kdre/kernels.hpp"
#include "kdre/simd/dispatch.hpp"

namespace kdre {

struct RatioEstimate {
  double value = 0.0;
  std::uint8_t flags = kCellOk;
};

//! Kernel density estimate (1/(N h^d)) sum_i K((z - Z_i)/h) over a fixed
//! sample. The gaussian-product family runs through the SIMD table.
class KernelDensity {
 public:
  KernelDensity(const SampleSet& sample, KernelSpec kernel, double h,
                simd::Isa isa = simd::Isa::automatic);

  double operator()(std::span<const double> z) const;

  std::size_t dim() const noexcept { return columns_.size(); }
  std::size_t size() const noexcept { return n_; }
  double bandwidth() const noexcept { return h_; }

 private:
  std::size_t n_;
  std::vector<std::vector<double>> columns_;
  std::vector<const double*> column_ptrs_;
  KernelSpec kernel_;
  double h_;
  const simd::KernelTable* table_;
};

double kde(const SampleSet& sample, const KernelSpec& kernel, double h, std::span<const double> z,
           simd::Isa isa = simd::Isa::automatic);

//! Ratio of two kernel density estimates f^(z)/g^(z).
class IndirectKdre {
 public:
  IndirectKdre(const SampleSet& x, const SampleSet& y, KernelFamily family, double hx, double hy,
               simd::Isa isa = simd::Isa::automatic);

  double numerator(std::span<const double> z) const { return f_(z); }
  double denominator(std::span<const double> z) const { return g_(z); }
  //! A zero denominator yields value 0 with kDivideByZero set.
  RatioEstimate estimate(std::span<const double> z) const;

 private:
  KernelDensity f_;
  KernelDensity g_;
};

//! Direct density-ratio estimator
//!   r^(z) = (1/(n h^d)) sum_i K((H^(z) - H^(X_i)) / h)
//! where H^ is the conditional-CDF transform fitted on the Y sample. The
//! transformed X sample H^(X_i) does not depend on z and is computed once
//! at construction.
class DirectKdre {
 public:
  struct Options {
    KernelFamily main_kernel = KernelFamily::boxcar;
    KernelFamily weight_kernel = KernelFamily::gaussian_radial;
    simd::Isa isa = simd::Isa::automatic;
    std::vector<std::size_t> permutation;
    std::size_t threads = 1;
  };

  DirectKdre(const SampleSet& x, const SampleSet& y, const BandwidthSpec& bandwidths,
             Options options);

  RatioEstimate estimate(std::span<const double> z) const;

  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return n_; }
  double bandwidth() const noexcept { return h_; }
  const KernelSpec& main_kernel() const noexcept { return kernel_; }
  const ConditionalCdfModel& cdf_model() const noexcept { return cdf_; }

  //! H^(X_i), row-major n x d.
  const std::vector<double>& cache() const noexcept { return cache_; }
  std::span<const double> cached(std::size_t i) const { return {cache_.data() + i * d_, d_}; }
  //! Number of X points whose transform used the uniform-weight fallback.
  std::size_t cache_fallbacks() const noexcept { return cache_fallbacks_; }

  //! h^{-d} sup K; no estimate can exceed it.
  double upper_bound() const noexcept;

 private:
  std::size_t d_;
  std::size_t n_;
  double h_;
  KernelSpec kernel_;
  ConditionalCdfModel cdf_;
  std::vector<double> cache_;
  std::size_t cache_fallbacks_ = 0;
};

DirectKdre fit_direct(const SampleSet& x, const SampleSet& y, const BandwidthSpec& bandwidths,
                      KernelFamily main_kernel, KernelFamily weight_kernel,
                      simd::Isa isa = simd::Isa::automatic);

double estimate_direct(const DirectKdre& model, std::span<const double> z);
RatioEstimate estimate_indirect(const IndirectKdre& model, std::span<const double> z);

struct ChannelSource {
  Channel channel;
  std::function<RatioEstimate(std::span<const double>)> evaluate;
};

//! Evaluates every source at every lattice point. Cell flags are the OR of
//! the flags reported by the sources.
RatioField evaluate_field(const GridSpec& grid, const std::vector<ChannelSource>& sources,
                          std::size_t threads = 1);

}  // namespace kdre
