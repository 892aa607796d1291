#include "kdre/cdf.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kdre {

double ecdf(std::span<const double> y, double z) noexcept {
  std::size_t count = 0;
  for (double v : y) count += (v <= z) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(y.size());
}

Point delta_projection(std::span<const double> yj, std::span<const double> z, std::size_t level) {
  if (yj.size() != z.size()) throw std::invalid_argument("delta_projection: dimension mismatch");
  if (level < 2 || level > z.size())
    throw std::invalid_argument("delta_projection: level " + std::to_string(level) +
                                " outside [2, " + std::to_string(z.size()) + "]");
  std::vector<double> out(level - 1);
  for (std::size_t k = 0; k + 1 < level; ++k) out[k] = yj[k] - z[k];
  return Point(std::move(out));
}

ConditionalCdfModel::ConditionalCdfModel(const SampleSet& y, std::vector<double> epsilons)
    : ConditionalCdfModel(y, std::move(epsilons), Options{}) {}

ConditionalCdfModel::ConditionalCdfModel(const SampleSet& y, std::vector<double> epsilons,
                                         Options options)
    : m_(y.size()),
      epsilons_(std::move(epsilons)),
      permutation_(std::move(options.permutation)),
      weight_kernel_(options.weight_kernel),
      table_(&simd::kernels(options.isa)) {
  const std::size_t d = y.dim();
  BandwidthSpec{1.0, epsilons_}.validate(d);
  if (permutation_.empty()) {
    permutation_.resize(d);
    std::iota(permutation_.begin(), permutation_.end(), std::size_t{0});
  }
  std::vector<std::size_t> check = permutation_;
  std::sort(check.begin(), check.end());
  bool valid = check.size() == d;
  for (std::size_t k = 0; valid && k < d; ++k) valid = check[k] == k;
  if (!valid) throw std::invalid_argument("ConditionalCdfModel: invalid coordinate permutation");

  columns_.reserve(d);
  for (std::size_t k = 0; k < d; ++k) columns_.push_back(y.column(permutation_[k]));
  sorted_ = columns_;
  for (auto& col : sorted_) std::sort(col.begin(), col.end());
  for (const auto& col : columns_) column_ptrs_.push_back(col.data());
}

std::vector<double> ConditionalCdfModel::permute(std::span<const double> z) const {
  if (z.size() != dim())
    throw std::invalid_argument("ConditionalCdfModel: expected a point of dimension " +
                                std::to_string(dim()));
  std::vector<double> zp(dim());
  for (std::size_t k = 0; k < dim(); ++k) zp[k] = z[permutation_[k]];
  return zp;
}

double ConditionalCdfModel::uniform_cdf(std::size_t axis, double value) const noexcept {
  const auto& col = sorted_[axis];
  const auto count = std::upper_bound(col.begin(), col.end(), value) - col.begin();
  return static_cast<double>(count) / static_cast<double>(m_);
}

CdfValue ConditionalCdfModel::level_value(std::span<const double> zp, std::size_t level) const {
  const std::size_t axis = level - 1;
  if (level == 1) return {uniform_cdf(0, zp[0]), false};

  simd::NwSums sums;
  if (weight_kernel_ == KernelFamily::gaussian_radial) {
    simd::NwQuery q;
    q.cond_cols = std::span<const double* const>(column_ptrs_.data(), axis);
    q.z_cond = zp.first(axis);
    q.target_col = column_ptrs_[axis];
    q.z_target = zp[axis];
    q.eps = epsilons_[axis - 1];
    q.norm = gaussian_radial_norm(axis);
    q.m = m_;
    sums = table_->nw_sums(q);
  } else {
    const KernelSpec kernel{weight_kernel_, axis};
    const double eps = epsilons_[axis - 1];
    std::vector<double> u(axis);
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t k = 0; k < axis; ++k) u[k] = (columns_[k][j] - zp[k]) / eps;
      double kv = kernel(u);
      if (kv < simd::kKernelFloor) kv = 0.0;
      sums.total += kv;
      if (columns_[axis][j] <= zp[axis]) sums.weighted += kv;
    }
  }
  if (sums.total == 0.0) return {uniform_cdf(axis, zp[axis]), true};
  return {sums.weighted / sums.total, false};
}

WeightVector ConditionalCdfModel::weights(std::span<const double> z, std::size_t level) const {
  if (level < 1 || level > dim()) throw std::invalid_argument("weights: level out of range");
  WeightVector out;
  const double uniform = 1.0 / static_cast<double>(m_);
  if (level == 1) {
    out.weights.assign(m_, uniform);
    return out;
  }
  const auto zp = permute(z);
  const std::size_t axis = level - 1;
  const KernelSpec kernel{weight_kernel_, axis};
  const double eps = epsilons_[axis - 1];
  out.weights.resize(m_);
  std::vector<double> u(axis);
  double total = 0.0;
  for (std::size_t j = 0; j < m_; ++j) {
    for (std::size_t k = 0; k < axis; ++k) u[k] = (columns_[k][j] - zp[k]) / eps;
    double kv = kernel(u);
    if (kv < simd::kKernelFloor) kv = 0.0;
    out.weights[j] = kv;
    total += kv;
  }
  if (total == 0.0) {
    out.weights.assign(m_, uniform);
    out.fallback = true;
    return out;
  }
  for (double& w : out.weights) w /= total;
  return out;
}

CdfValue ConditionalCdfModel::conditional_cdf(std::span<const double> z, std::size_t level) const {
  if (level < 1 || level > dim()) throw std::invalid_argument("conditional_cdf: level out of range");
  const auto zp = permute(z);
  return level_value(zp, level);
}

bool ConditionalCdfModel::evaluate_into(std::span<const double> z, std::span<double> out) const {
  const auto zp = permute(z);
  bool fallback = false;
  for (std::size_t level = 1; level <= dim(); ++level) {
    const auto v = level_value(zp, level);
    out[level - 1] = v.value;
    fallback = fallback || v.fallback;
  }
  return fallback;
}

std::vector<double> ConditionalCdfModel::evaluate(std::span<const double> z) const {
  std::vector<double> out(dim());
  evaluate_into(z, out);
  return out;
}

WeightVector nw_weights(const ConditionalCdfModel& model, std::span<const double> z,
                        std::size_t level) {
  return model.weights(z, level);
}

double conditional_cdf(const ConditionalCdfModel& model, std::span<const double> z,
                       std::size_t level) {
  return model.conditional_cdf(z, level).value;
}

std::vector<double> cdf_vector(const ConditionalCdfModel& model, std::span<const double> z) {
  return model.evaluate(z);
}

}  // namespace kdre
