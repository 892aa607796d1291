#include "kdre/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kdre {

std::string_view kernel_family_name(KernelFamily family) noexcept {
  switch (family) {
    case KernelFamily::boxcar: return "boxcar";
    case KernelFamily::gaussian_radial: return "gaussian-radial";
    case KernelFamily::gaussian_product: return "gaussian-product";
  }
  return "?";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "boxcar") return KernelFamily::boxcar;
  if (name == "gaussian-radial") return KernelFamily::gaussian_radial;
  if (name == "gaussian-product") return KernelFamily::gaussian_product;
  throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

double eval_boxcar(std::span<const double> z) noexcept {
  for (double c : z) {
    if (!(c >= -0.5 && c <= 0.5)) return 0.0;
  }
  return 1.0;
}

double gaussian_radial_norm(std::size_t dim) noexcept {
  return std::pow(std::numbers::pi, -0.5 * static_cast<double>(dim));
}

double gaussian_product_norm(std::size_t dim) noexcept {
  return std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(dim));
}

double eval_gaussian_radial(std::span<const double> delta) noexcept {
  double sq = 0.0;
  for (double c : delta) sq += c * c;
  return gaussian_radial_norm(delta.size()) * std::exp(-sq);
}

double eval_gaussian_product(std::span<const double> z) noexcept {
  double sq = 0.0;
  for (double c : z) sq += c * c;
  return gaussian_product_norm(z.size()) * std::exp(-0.5 * sq);
}

double KernelSpec::operator()(std::span<const double> z) const {
  if (z.size() != dim)
    throw std::invalid_argument("kernel dimension mismatch: expected " + std::to_string(dim) +
                                ", got " + std::to_string(z.size()));
  switch (family) {
    case KernelFamily::boxcar: return eval_boxcar(z);
    case KernelFamily::gaussian_radial: return eval_gaussian_radial(z);
    case KernelFamily::gaussian_product: return eval_gaussian_product(z);
  }
  return 0.0;
}

double KernelSpec::sup() const noexcept {
  switch (family) {
    case KernelFamily::boxcar: return 1.0;
    case KernelFamily::gaussian_radial: return gaussian_radial_norm(dim);
    case KernelFamily::gaussian_product: return gaussian_product_norm(dim);
  }
  return 0.0;
}

}  // namespace kdre
