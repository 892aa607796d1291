#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

#include "kdre/core.hpp"

namespace kdre {

//! Identifies one reproducible draw sequence. Streams sharing a seed but
//! differing in stream_id are independent.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint32_t stream_id = 0;
};

inline constexpr std::uint32_t kXStream = 0;       // draws from F
inline constexpr std::uint32_t kYStream = 1;       // draws from G
inline constexpr std::uint32_t kOracleStream = 2;  // Monte-Carlo oracle draws from F

//! Standard normal variates by the Marsaglia polar method on top of
//! std::mt19937_64 seeded through std::seed_seq{seed_lo, seed_hi, stream_id}.
//! Uniforms on (-1, 1) take the top 53 bits of each engine output. Both
//! members of each accepted pair are used, first u then v.
class NormalStream {
 public:
  explicit NormalStream(SeededStream stream);
  double next();

 private:
  double uniform_pm1();

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

//! Sequential N(mu, Sigma) draws: mu + L w with w a vector of consecutive
//! standard normals from the stream and L the lower Cholesky factor.
class MvnSampler {
 public:
  MvnSampler(const GaussianSpec& spec, SeededStream stream);
  void next(std::span<double> out);

 private:
  const GaussianSpec* spec_;
  NormalStream normals_;
  std::vector<double> w_;
};

SampleSet sample_mvn(const GaussianSpec& spec, std::size_t count, SeededStream stream);

}  // namespace kdre
