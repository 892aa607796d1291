#include "kdre/harness/experiment.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "kdre/estimators.hpp"
#include "kdre/parallel.hpp"
#include "kdre/synth.hpp"

namespace kdre::harness {
namespace {

ExperimentResult evaluate(const ExperimentConfig& config, const SampleSet* x, const SampleSet* y,
                          const RunOptions& options) {
  const GaussianPair pair(config.f, config.g);
  std::unique_ptr<DirectKdre> direct;
  std::unique_ptr<IndirectKdre> indirect;

  std::vector<ChannelSource> sources;
  for (Channel c : config.channels) {
    switch (c) {
      case Channel::truth:
        sources.push_back({c, [&pair](std::span<const double> z) {
                             return RatioEstimate{true_ratio(pair, z), kCellOk};
                           }});
        break;
      case Channel::direct: {
        DirectKdre::Options opts;
        opts.main_kernel = config.main_kernel;
        opts.weight_kernel = config.weight_kernel;
        opts.isa = options.isa;
        opts.permutation = config.permutation;
        opts.threads = options.threads;
        direct = std::make_unique<DirectKdre>(*x, *y, config.bandwidths, std::move(opts));
        const DirectKdre* model = direct.get();
        sources.push_back({c, [model](std::span<const double> z) { return model->estimate(z); }});
        break;
      }
      case Channel::indirect: {
        indirect = std::make_unique<IndirectKdre>(*x, *y, KernelFamily::gaussian_product,
                                                  config.indirect_hx, config.indirect_hy,
                                                  options.isa);
        const IndirectKdre* model = indirect.get();
        sources.push_back({c, [model](std::span<const double> z) { return model->estimate(z); }});
        break;
      }
    }
  }

  RatioField field = evaluate_field(config.grid, sources, options.threads);
  MetricsReport metrics;
  if (config.wants(Channel::truth) && config.channels.size() > 1) metrics = compute_metrics(field);

  ExperimentResult result{std::move(field), std::move(metrics), std::nullopt, std::nullopt, 0, 0.0};
  if (direct) {
    result.cache_fallbacks = direct->cache_fallbacks();
    result.direct_upper_bound = direct->upper_bound();
  }
  return result;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  if (!config.wants(Channel::direct) && !config.wants(Channel::indirect))
    return evaluate(config, nullptr, nullptr, options);
  SampleSet x = sample_mvn(config.f, config.n, SeededStream{config.seed, kXStream});
  SampleSet y = sample_mvn(config.g, config.m, SeededStream{config.seed, kYStream});
  ExperimentResult result = evaluate(config, &x, &y, options);
  result.x = std::move(x);
  result.y = std::move(y);
  return result;
}

ExperimentResult run_on_samples(const ExperimentConfig& config, const SampleSet& x,
                                const SampleSet& y, const RunOptions& options) {
  if (x.dim() != config.d || y.dim() != config.d)
    throw ConfigError("d", "sample dimension does not match the config");
  return evaluate(config, &x, &y, options);
}

RadonNikodymCheck default_radon_nikodym_check() {
  Eigen::MatrixXd cov_f(2, 2), cov_g(2, 2);
  cov_f << 0.3, 0.1, 0.1, 0.3;
  cov_g << 0.5, 0.1, 0.1, 0.5;
  GaussianPair pair(GaussianSpec(Point{0.0, -0.5}, cov_f), GaussianSpec(Point{0.0, 0.0}, cov_g));
  RadonNikodymCheck check{.pair = std::move(pair)};
  check.points = lattice_points(GridSpec(Point{-0.5, -0.5}, Point{0.5, 0.5}, {3, 3}));
  return check;
}

CheckReport run_radon_nikodym_check(const RadonNikodymCheck& check, std::size_t threads) {
  const KernelSpec kernel{check.kernel, check.pair.dim()};
  CheckReport report;
  report.points.resize(check.points.size());
  parallel_for(check.points.size(), threads, [&](std::size_t i) {
    const Point& z = check.points[i];
    CheckPoint& p = report.points[i];
    p.z = z;
    p.limit = mc_limit_integral(check.pair, z, kernel, check.h, check.draws, check.seed);
    p.truth = true_ratio(check.pair, z);
    p.rel_error = std::abs(p.limit / p.truth - 1.0);
    p.pass = p.rel_error < check.tolerance;
  });
  for (const auto& p : report.points) report.passing += p.pass ? 1 : 0;
  report.ok = report.passing >= check.min_passing;
  return report;
}

std::string gnuplot_script(const RatioField& field, const std::string& csv_name) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set xlabel 'x1'\nset ylabel 'x2'\n"
      << "set term pngcairo size 900,700\n";
  const std::size_t d = field.grid.dim();
  for (std::size_t c = 0; c < field.channels.size(); ++c) {
    const auto name = channel_name(field.channels[c].first);
    out << "set output '" << name << ".png'\n"
        << "set title 'density ratio: " << name << "'\n";
    if (d == 2) {
      out << "splot '" << csv_name << "' using 1:2:" << (d + c + 1) << " with points pt 7 ps 0.5\n";
    } else {
      out << "plot '" << csv_name << "' using 1:" << (d + c + 1) << " with linespoints\n";
    }
  }
  return out.str();
}

}  // namespace kdre::harness
