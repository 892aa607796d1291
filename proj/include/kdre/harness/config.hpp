#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kdre/core.hpp"
#include "kdre/kernels.hpp"

namespace kdre::harness {

//! One experiment: two Gaussians, sample sizes, bandwidths and the grid.
//!
//! JSON keys (comments are allowed in config files):
//!   d, n, m, seed                      integers
//!   bandwidths: {h, epsilons: [...]}   epsilons has d-1 entries
//!   mainKernel                         "boxcar" | "gaussian-radial" | "gaussian-product"
//!   weightKernel                       optional, default "gaussian-radial"
//!   grid: {lower: [...], upper: [...], counts: [...]}
//!   F, G: {mean: [...], cov: [[...], ...]}
//!   channels                           non-empty subset of ["true", "direct", "indirect"]
//!   coordinatePermutation              optional permutation of 1..d
//!   indirectBandwidths: {hX, hY}       optional, default h for both
struct ExperimentConfig {
  std::size_t d;
  std::size_t n;
  std::size_t m;
  BandwidthSpec bandwidths;
  KernelFamily main_kernel;
  KernelFamily weight_kernel;
  GridSpec grid;
  GaussianSpec f;
  GaussianSpec g;
  std::uint64_t seed;
  std::vector<Channel> channels;
  std::vector<std::size_t> permutation;  // 0-based, empty for identity
  double indirect_hx;
  double indirect_hy;

  bool wants(Channel c) const;
};

//! Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);
//! Throws IoError if the file cannot be read, ConfigError if it is invalid.
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const ExperimentConfig& config);

//! Comma separated channel list, e.g. "true,direct".
std::vector<Channel> parse_channel_list(const std::string& list);

}  // namespace kdre::harness
