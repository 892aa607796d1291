#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kdre/core.hpp"
#include "kdre/kernels.hpp"

namespace kdre {

// Closed-form ground truth for Gaussian F and G.

struct GaussianPair {
  GaussianSpec f;
  GaussianSpec g;

  GaussianPair(GaussianSpec f_, GaussianSpec g_);
  std::size_t dim() const noexcept { return f.dim(); }
};

//! Standard normal CDF.
double normal_cdf(double x) noexcept;

double mvn_log_pdf(const GaussianSpec& spec, std::span<const double> z);
double mvn_pdf(const GaussianSpec& spec, std::span<const double> z);

//! f(z)/g(z), computed as exp(log f - log g) so it stays finite where both
//! densities underflow.
double true_ratio(const GaussianPair& pair, std::span<const double> z);

//! P(Z_l <= z_l | Z_1..Z_{l-1} = z_1..z_{l-1}) for Z ~ spec, level 1-based.
//! With z - mu = L w (L the lower Cholesky factor) this is Phi(w_l).
double gaussian_conditional_cdf(const GaussianSpec& spec, std::span<const double> z,
                                std::size_t level);

//! All levels at once: (Phi(w_1), ..., Phi(w_d)).
std::vector<double> gaussian_cdf_vector(const GaussianSpec& spec, std::span<const double> z);

//! Monte-Carlo value of (1/h^d) E_F[ K((H(z) - H(X))/h) ] with H the exact
//! conditional-CDF transform of G. Draws come from
//! SeededStream{seed, kOracleStream}.
double mc_limit_integral(const GaussianPair& pair, std::span<const double> z,
                         const KernelSpec& kernel, double h, std::size_t draws,
                         std::uint64_t seed);

}  // namespace kdre
