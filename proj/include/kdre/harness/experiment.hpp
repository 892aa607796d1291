#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kdre/core.hpp"
#include "kdre/harness/config.hpp"
#include "kdre/harness/metrics.hpp"
#include "kdre/kernels.hpp"
#include "kdre/oracle.hpp"
#include "kdre/simd/dispatch.hpp"

namespace kdre::harness {

struct RunOptions {
  std::size_t threads = 1;
  simd::Isa isa = simd::Isa::automatic;
};

struct ExperimentResult {
  RatioField field;
  MetricsReport metrics;  // empty unless "true" and an estimate channel are present
  std::optional<SampleSet> x;
  std::optional<SampleSet> y;
  std::size_t cache_fallbacks = 0;
  double direct_upper_bound = 0.0;
};

//! Draws X ~ F from stream kXStream and Y ~ G from kYStream of config.seed,
//! fits the requested estimators and evaluates them on the grid. Nothing is
//! sampled when only the "true" channel is requested.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

//! Same as run_experiment but on caller-provided samples.
ExperimentResult run_on_samples(const ExperimentConfig& config, const SampleSet& x,
                                const SampleSet& y, const RunOptions& options = {});

//! Monte-Carlo check that the limiting integral of the direct estimator
//! recovers f/g at a set of probe points.
struct RadonNikodymCheck {
  GaussianPair pair;
  KernelFamily kernel = KernelFamily::boxcar;
  double h = 0.05;
  std::size_t draws = 1'000'000;
  std::uint64_t seed = 1;
  std::vector<Point> points = {};
  double tolerance = 0.1;       // relative error bound per point
  std::size_t min_passing = 8;  // points that must meet the bound
};

struct CheckPoint {
  Point z;
  double limit = 0.0;
  double truth = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckPoint> points;
  std::size_t passing = 0;
  bool ok = false;
};

//! The favourable Gaussian pair with the 3 x 3 probe lattice over
//! [-0.5, 0.5]^2.
RadonNikodymCheck default_radon_nikodym_check();

CheckReport run_radon_nikodym_check(const RadonNikodymCheck& check, std::size_t threads = 1);

//! Gnuplot script drawing each channel of a 2-d field CSV as a surface.
std::string gnuplot_script(const RatioField& field, const std::string& csv_name);

}  // namespace kdre::harness
