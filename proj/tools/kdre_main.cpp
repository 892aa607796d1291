// kdre: command line front end for the density-ratio experiments.
//
//   kdre simulate   --config c.json [--seed s] --out dir
//   kdre estimate   --config c.json --x x.csv --y y.csv --out dir [--channels ...]
//   kdre experiment --config c.json [--seed s] --out dir [--channels ...] [--gnuplot]
//   kdre check      [--config c.json] [--seed s] [--draws N] [--bandwidth h]
//
// Exit codes: 0 success, 2 config error, 3 I/O error, 4 check failure,
// 1 anything unexpected.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kdre/harness/config.hpp"
#include "kdre/harness/csv.hpp"
#include "kdre/harness/experiment.hpp"
#include "kdre/harness/metrics.hpp"
#include "kdre/synth.hpp"

namespace fs = std::filesystem;
using namespace kdre;
using namespace kdre::harness;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitCheckFailed = 4;

struct CommonArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::string channels;
  std::size_t threads = 0;
  std::string isa = "auto";
  bool gnuplot = false;
};

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig config = load_config(args.config);
  if (args.seed) config.seed = *args.seed;
  if (!args.channels.empty()) config.channels = parse_channel_list(args.channels);
  return config;
}

RunOptions run_options(const CommonArgs& args) {
  RunOptions opts;
  opts.threads = args.threads;
  try {
    opts.isa = simd::resolve(simd::parse_isa(args.isa));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("--isa", e.what());
  }
  return opts;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void emit_field(const ExperimentResult& result, const CommonArgs& args) {
  const fs::path out(args.out);
  write_field_csv(result.field, out / "field.csv");
  if (!result.metrics.channels.empty()) {
    nlohmann::json j = to_json(result.metrics);
    j["cacheFallbacks"] = result.cache_fallbacks;
    write_text(out / "metrics.json", j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
  }
  if (args.gnuplot) write_text(out / "plot.gp", gnuplot_script(result.field, "field.csv"));
}

int cmd_simulate(const CommonArgs& args) {
  const ExperimentConfig config = load(args);
  ensure_dir(args.out);
  const fs::path out(args.out);
  write_samples_csv(sample_mvn(config.f, config.n, SeededStream{config.seed, kXStream}),
                    out / "x_samples.csv");
  write_samples_csv(sample_mvn(config.g, config.m, SeededStream{config.seed, kYStream}),
                    out / "y_samples.csv");
  return 0;
}

int cmd_estimate(const CommonArgs& args, const std::string& x_path, const std::string& y_path) {
  const ExperimentConfig config = load(args);
  const SampleSet x = read_samples_csv(x_path);
  const SampleSet y = read_samples_csv(y_path);
  ensure_dir(args.out);
  emit_field(run_on_samples(config, x, y, run_options(args)), args);
  return 0;
}

int cmd_experiment(const CommonArgs& args) {
  const ExperimentConfig config = load(args);
  ensure_dir(args.out);
  const ExperimentResult result = run_experiment(config, run_options(args));
  const fs::path out(args.out);
  if (result.x) write_samples_csv(*result.x, out / "x_samples.csv");
  if (result.y) write_samples_csv(*result.y, out / "y_samples.csv");
  emit_field(result, args);
  return 0;
}

int cmd_check(const CommonArgs& args, std::optional<std::size_t> draws, std::optional<double> h) {
  RadonNikodymCheck check = default_radon_nikodym_check();
  if (!args.config.empty()) {
    const ExperimentConfig config = load(args);
    check.pair = GaussianPair(config.f, config.g);
    check.kernel = config.main_kernel;
    if (config.d != 2) {
      check.points.clear();
      const GridSpec probes(Point(std::vector<double>(config.d, -0.5)),
                            Point(std::vector<double>(config.d, 0.5)),
                            std::vector<std::size_t>(config.d, 3));
      check.points = lattice_points(probes);
      check.min_passing = check.points.size() - check.points.size() / 9;
    }
  }
  if (args.seed) check.seed = *args.seed;
  if (draws) check.draws = *draws;
  if (h) check.h = *h;

  const CheckReport report = run_radon_nikodym_check(check, args.threads);
  for (const auto& p : report.points) {
    std::string coords;
    for (std::size_t k = 0; k < p.z.dim(); ++k) coords += (k ? "," : "") + format_double(p.z[k]);
    std::printf("%s z=(%s) limit=%.6f true=%.6f rel_err=%.4f\n", p.pass ? "PASS" : "FAIL",
                coords.c_str(), p.limit, p.truth, p.rel_error);
  }
  std::printf("%s: %zu/%zu points within %.0f%% (need %zu)\n", report.ok ? "PASS" : "FAIL",
              report.passing, report.points.size(), 100.0 * check.tolerance, check.min_passing);
  return report.ok ? 0 : kExitCheckFailed;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config, "experiment config (JSON)");
  if (config_required) opt->required();
  cmd->add_option("--seed", args.seed, "override the config seed");
  cmd->add_option("--threads", args.threads, "worker threads (0 = all cores)");
}

void add_output(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out", args.out, "output directory");
  cmd->add_option("--channels", args.channels, "comma separated subset of true,direct,indirect");
  cmd->add_option("--isa", args.isa, "inner-loop variant: auto, scalar, avx2, neon");
  cmd->add_flag("--gnuplot", args.gnuplot, "also write plot.gp");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct and indirect kernel density-ratio estimation"};
  app.require_subcommand(1);
  CommonArgs args;

  auto* simulate = app.add_subcommand("simulate", "write X and Y sample CSVs");
  add_common(simulate, args, true);
  simulate->add_option("--out", args.out, "output directory");

  std::string x_path, y_path;
  auto* estimate = app.add_subcommand("estimate", "estimate a ratio field from sample CSVs");
  add_common(estimate, args, true);
  add_output(estimate, args);
  estimate->add_option("--x", x_path, "X sample CSV")->required();
  estimate->add_option("--y", y_path, "Y sample CSV")->required();

  auto* experiment = app.add_subcommand("experiment", "sample, estimate and score end to end");
  add_common(experiment, args, true);
  add_output(experiment, args);

  std::optional<std::size_t> draws;
  std::optional<double> h;
  auto* check = app.add_subcommand("check", "Monte-Carlo validation of the limiting integral");
  add_common(check, args, false);
  check->add_option("--draws", draws, "Monte-Carlo draws per point");
  check->add_option("--bandwidth", h, "kernel bandwidth h");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(args);
    if (*estimate) return cmd_estimate(args, x_path, y_path);
    if (*experiment) return cmd_experiment(args);
    if (*check) return cmd_check(args, draws, h);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
