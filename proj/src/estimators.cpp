#include "kdre/estimators.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "kdre/parallel.hpp"

namespace kdre {

KernelDensity::KernelDensity(const SampleSet& sample, KernelSpec kernel, double h, simd::Isa isa)
    : n_(sample.size()), kernel_(kernel), h_(h), table_(&simd::kernels(isa)) {
  if (!(h > 0.0)) throw std::invalid_argument("KernelDensity: bandwidth must be > 0");
  if (kernel.dim != sample.dim())
    throw std::invalid_argument("KernelDensity: kernel and sample dimensions differ");
  for (std::size_t k = 0; k < sample.dim(); ++k) columns_.push_back(sample.column(k));
  for (const auto& col : columns_) column_ptrs_.push_back(col.data());
}

double KernelDensity::operator()(std::span<const double> z) const {
  if (z.size() != dim()) throw std::invalid_argument("KernelDensity: dimension mismatch");
  const double scale = static_cast<double>(n_) * std::pow(h_, static_cast<double>(dim()));
  if (kernel_.family == KernelFamily::gaussian_product) {
    const double s = table_->gauss_sum(column_ptrs_, z, h_, n_);
    return gaussian_product_norm(dim()) * s / scale;
  }
  std::vector<double> u(dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < dim(); ++k) u[k] = (z[k] - columns_[k][i]) / h_;
    sum += kernel_(u);
  }
  return sum / scale;
}

double kde(const SampleSet& sample, const KernelSpec& kernel, double h, std::span<const double> z,
           simd::Isa isa) {
  return KernelDensity(sample, kernel, h, isa)(z);
}

IndirectKdre::IndirectKdre(const SampleSet& x, const SampleSet& y, KernelFamily family, double hx,
                           double hy, simd::Isa isa)
    : f_(x, KernelSpec{family, x.dim()}, hx, isa), g_(y, KernelSpec{family, y.dim()}, hy, isa) {
  if (x.dim() != y.dim()) throw std::invalid_argument("IndirectKdre: sample dimensions differ");
}

RatioEstimate IndirectKdre::estimate(std::span<const double> z) const {
  const double g = g_(z);
  if (g == 0.0) return {0.0, kDivideByZero};
  return {f_(z) / g, kCellOk};
}

DirectKdre::DirectKdre(const SampleSet& x, const SampleSet& y, const BandwidthSpec& bandwidths,
                       Options options)
    : d_(x.dim()),
      n_(x.size()),
      h_(bandwidths.h),
      kernel_{options.main_kernel, x.dim()},
      cdf_(y, bandwidths.epsilons,
           ConditionalCdfModel::Options{options.weight_kernel, options.isa,
                                        std::move(options.permutation)}) {
  if (x.dim() != y.dim()) throw std::invalid_argument("DirectKdre: sample dimensions differ");
  bandwidths.validate(d_);

  cache_.resize(n_ * d_);
  std::atomic<std::size_t> fallbacks{0};
  parallel_for(n_, options.threads, [&](std::size_t i) {
    if (cdf_.evaluate_into(x.point(i), {cache_.data() + i * d_, d_}))
      fallbacks.fetch_add(1, std::memory_order_relaxed);
  });
  cache_fallbacks_ = fallbacks.load();
}

RatioEstimate DirectKdre::estimate(std::span<const double> z) const {
  if (z.size() != d_) throw std::invalid_argument("DirectKdre: dimension mismatch");
  std::vector<double> hz(d_);
  const bool fallback = cdf_.evaluate_into(z, hz);
  std::vector<double> u(d_);
  double sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    const double* hx = cache_.data() + i * d_;
    for (std::size_t k = 0; k < d_; ++k) u[k] = (hz[k] - hx[k]) / h_;
    sum += kernel_(u);
  }
  const double value = sum / (static_cast<double>(n_) * std::pow(h_, static_cast<double>(d_)));
  return {value, fallback ? std::uint8_t{kWeightFallback} : std::uint8_t{kCellOk}};
}

double DirectKdre::upper_bound() const noexcept {
  return kernel_.sup() / std::pow(h_, static_cast<double>(d_));
}

DirectKdre fit_direct(const SampleSet& x, const SampleSet& y, const BandwidthSpec& bandwidths,
                      KernelFamily main_kernel, KernelFamily weight_kernel, simd::Isa isa) {
  DirectKdre::Options opts;
  opts.main_kernel = main_kernel;
  opts.weight_kernel = weight_kernel;
  opts.isa = isa;
  return DirectKdre(x, y, bandwidths, std::move(opts));
}

double estimate_direct(const DirectKdre& model, std::span<const double> z) {
  return model.estimate(z).value;
}

RatioEstimate estimate_indirect(const IndirectKdre& model, std::span<const double> z) {
  return model.estimate(z);
}

RatioField evaluate_field(const GridSpec& grid, const std::vector<ChannelSource>& sources,
                          std::size_t threads) {
  RatioField field(grid);
  for (const auto& src : sources) field.add_channel(src.channel);
  std::vector<std::vector<double>*> outputs;
  for (auto& entry : field.channels) outputs.push_back(&entry.second);
  parallel_for(grid.size(), threads, [&](std::size_t cell) {
    const Point z = grid.point(cell);
    std::uint8_t flags = kCellOk;
    for (std::size_t s = 0; s < sources.size(); ++s) {
      const auto est = sources[s].evaluate(z);
      (*outputs[s])[cell] = est.value;
      flags |= est.flags;
    }
    field.flags[cell] = flags;
  });
  return field;
}

}  // namespace kdre
