#include "kdre/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kdre/synth.hpp"

namespace kdre {
namespace {

// Solves L w = z - mu for the first `levels` coordinates.
std::vector<double> whiten(const GaussianSpec& spec, std::span<const double> z,
                           std::size_t levels) {
  if (z.size() != spec.dim()) throw std::invalid_argument("Gaussian oracle: dimension mismatch");
  const auto& L = spec.chol_lower();
  std::vector<double> w(levels);
  for (std::size_t r = 0; r < levels; ++r) {
    const auto ri = static_cast<Eigen::Index>(r);
    double acc = z[r] - spec.mean()[r];
    for (std::size_t c = 0; c < r; ++c) acc -= L(ri, static_cast<Eigen::Index>(c)) * w[c];
    w[r] = acc / L(ri, ri);
  }
  return w;
}

}  // namespace

GaussianPair::GaussianPair(GaussianSpec f_, GaussianSpec g_) : f(std::move(f_)), g(std::move(g_)) {
  if (f.dim() != g.dim()) throw InvalidSpecError("GaussianPair: F and G dimensions differ");
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double mvn_log_pdf(const GaussianSpec& spec, std::span<const double> z) {
  const auto w = whiten(spec, z, spec.dim());
  double q = 0.0;
  for (double v : w) q += v * v;
  const double d = static_cast<double>(spec.dim());
  return -0.5 * d * std::log(2.0 * std::numbers::pi) - 0.5 * spec.log_det() - 0.5 * q;
}

double mvn_pdf(const GaussianSpec& spec, std::span<const double> z) {
  return std::exp(mvn_log_pdf(spec, z));
}

double true_ratio(const GaussianPair& pair, std::span<const double> z) {
  return std::exp(mvn_log_pdf(pair.f, z) - mvn_log_pdf(pair.g, z));
}

double gaussian_conditional_cdf(const GaussianSpec& spec, std::span<const double> z,
                                std::size_t level) {
  if (level < 1 || level > spec.dim())
    throw std::invalid_argument("gaussian_conditional_cdf: level out of range");
  return normal_cdf(whiten(spec, z, level).back());
}

std::vector<double> gaussian_cdf_vector(const GaussianSpec& spec, std::span<const double> z) {
  auto w = whiten(spec, z, spec.dim());
  for (double& v : w) v = normal_cdf(v);
  return w;
}

double mc_limit_integral(const GaussianPair& pair, std::span<const double> z,
                         const KernelSpec& kernel, double h, std::size_t draws,
                         std::uint64_t seed) {
  if (draws == 0) throw std::invalid_argument("mc_limit_integral: draws must be >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("mc_limit_integral: h must be > 0");
  const std::size_t d = pair.dim();
  if (kernel.dim != d) throw std::invalid_argument("mc_limit_integral: kernel dimension mismatch");

  const auto hz = gaussian_cdf_vector(pair.g, z);
  MvnSampler sampler(pair.f, SeededStream{seed, kOracleStream});
  std::vector<double> x(d), u(d);
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    sampler.next(x);
    const auto hx = gaussian_cdf_vector(pair.g, x);
    for (std::size_t k = 0; k < d; ++k) u[k] = (hz[k] - hx[k]) / h;
    sum += kernel(u);
  }
  return sum / (static_cast<double>(draws) * std::pow(h, static_cast<double>(d)));
}

}  // namespace kdre
