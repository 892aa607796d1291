#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace kdre {

enum class KernelFamily { boxcar, gaussian_radial, gaussian_product };

std::string_view kernel_family_name(KernelFamily family) noexcept;
KernelFamily parse_kernel_family(std::string_view name);

//! Indicator of the closed box [-1/2, 1/2]^d.
double eval_boxcar(std::span<const double> z) noexcept;

//! pi^{-d/2} exp(-|delta|^2). Note the missing 1/2 in the exponent; the
//! normalizing constant accounts for it.
double eval_gaussian_radial(std::span<const double> delta) noexcept;

//! Standard normal product kernel, prod_k (2 pi)^{-1/2} exp(-z_k^2 / 2).
double eval_gaussian_product(std::span<const double> z) noexcept;

//! Normalizing constant in front of the exponential for the two Gaussian
//! families: pi^{-d/2} (radial) and (2 pi)^{-d/2} (product).
double gaussian_radial_norm(std::size_t dim) noexcept;
double gaussian_product_norm(std::size_t dim) noexcept;

struct KernelSpec {
  KernelFamily family = KernelFamily::boxcar;
  std::size_t dim = 1;

  //! Throws std::invalid_argument on dimension mismatch.
  double operator()(std::span<const double> z) const;
  //! sup_z K(z).
  double sup() const noexcept;
};

}  // namespace kdre
