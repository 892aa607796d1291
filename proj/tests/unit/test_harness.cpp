#include <algorithm>
#include <bit>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "kdre/harness/config.hpp"
#include "kdre/harness/csv.hpp"
#include "kdre/harness/experiment.hpp"
#include "kdre/harness/metrics.hpp"

using namespace kdre;
using namespace kdre::harness;
using nlohmann::json;

namespace {

const std::filesystem::path kConfigs = KDRE_CONFIG_DIR;

json small_config() {
  return json{{"d", 2},
              {"n", 200},
              {"m", 300},
              {"bandwidths", {{"h", 0.1}, {"epsilons", {0.1}}}},
              {"mainKernel", "boxcar"},
              {"grid", {{"lower", {-1.5, -1.5}}, {"upper", {1.5, 1.5}}, {"counts", {15, 15}}}},
              {"F", {{"mean", {0.0, -0.5}}, {"cov", {{0.3, 0.1}, {0.1, 0.3}}}}},
              {"G", {{"mean", {0.0, 0.0}}, {"cov", {{0.5, 0.1}, {0.1, 0.5}}}}},
              {"seed", 1},
              {"channels", {"true", "direct", "indirect"}}};
}

std::string config_error_field(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

void check_gaussian(const GaussianSpec& s, std::vector<double> mean, double a, double b,
                    double c) {
  CHECK(s.mean() == Point(mean));
  CHECK(s.cov()(0, 0) == a);
  CHECK(s.cov()(0, 1) == b);
  CHECK(s.cov()(1, 0) == b);
  CHECK(s.cov()(1, 1) == c);
}

}  // namespace

TEST_CASE("canonical configs carry the published parameters") {
  struct Expect {
    const char* file;
    std::size_t n, m;
    bool larger;
  };
  for (const Expect& e : {Expect{"favorable_n100.json", 100, 100, false},
                          Expect{"favorable_n1000.json", 1000, 1000, false},
                          Expect{"favorable_n10000.json", 10000, 10000, false},
                          Expect{"imbalanced_n100_m10000.json", 100, 10000, false},
                          Expect{"imbalanced_n10000_m100.json", 10000, 100, false},
                          Expect{"larger_ratio.json", 10000, 10000, true}}) {
    INFO(e.file);
    const auto c = load_config(kConfigs / e.file);
    CHECK(c.d == 2);
    CHECK(c.n == e.n);
    CHECK(c.m == e.m);
    CHECK(c.bandwidths.h == 0.1);
    CHECK(c.bandwidths.epsilons == std::vector<double>{0.1});
    CHECK(c.main_kernel == KernelFamily::boxcar);
    CHECK(c.weight_kernel == KernelFamily::gaussian_radial);
    CHECK(c.grid.lower == Point{-1.5, -1.5});
    CHECK(c.grid.upper == Point{1.5, 1.5});
    CHECK(c.grid.counts == std::vector<std::size_t>{15, 15});
    CHECK(c.seed == 1);
    CHECK(c.channels == std::vector<Channel>{Channel::truth, Channel::direct, Channel::indirect});
    if (e.larger) {
      check_gaussian(c.f, {0.0, -0.5}, 0.2, 0.1, 0.2);
      check_gaussian(c.g, {0.0, 0.5}, 0.2, 0.1, 0.2);
    } else {
      check_gaussian(c.f, {0.0, -0.5}, 0.3, 0.1, 0.3);
      check_gaussian(c.g, {0.0, 0.0}, 0.5, 0.1, 0.5);
    }
  }
}

TEST_CASE("config round trip and optional keys") {
  auto j = small_config();
  const auto c = parse_config(j);
  CHECK(c.indirect_hx == 0.1);
  CHECK(c.indirect_hy == 0.1);
  CHECK(c.permutation.empty());
  const auto again = parse_config(to_json(c));
  CHECK(to_json(again) == to_json(c));

  j["coordinatePermutation"] = {2, 1};
  j["indirectBandwidths"] = {{"hX", 0.2}, {"hY", 0.3}};
  j["weightKernel"] = "gaussian-product";
  const auto d = parse_config(j);
  CHECK(d.permutation == std::vector<std::size_t>{1, 0});
  CHECK(d.indirect_hx == 0.2);
  CHECK(d.indirect_hy == 0.3);
  CHECK(d.weight_kernel == KernelFamily::gaussian_product);
  CHECK(to_json(parse_config(to_json(d))) == to_json(d));

  CHECK(parse_config_text("// comment\n" + small_config().dump()).n == 200);
}

TEST_CASE("config errors name the field") {
  auto drop = [](const char* key) {
    auto j = small_config();
    j.erase(key);
    return j;
  };
  CHECK(config_error_field(drop("n")) == "n");
  CHECK(config_error_field(drop("channels")) == "channels");
  CHECK(config_error_field(drop("F")) == "F");

  auto j = small_config();
  j["bandwidths"]["epsilons"] = {0.1, 0.1};
  CHECK(config_error_field(j) == "bandwidths.epsilons");
  j = small_config();
  j["bandwidths"]["h"] = -1.0;
  CHECK(config_error_field(j) == "bandwidths.h");
  j = small_config();
  j["F"]["cov"] = {{1.0, 2.0}, {2.0, 1.0}};
  CHECK(config_error_field(j) == "F.cov");
  j = small_config();
  j["G"]["cov"] = {{1.0, 0.2}, {0.1, 1.0}};
  CHECK(config_error_field(j) == "G.cov");
  j = small_config();
  j["mainKernel"] = "triangle";
  CHECK(config_error_field(j) == "mainKernel");
  j = small_config();
  j["channels"] = json::array();
  CHECK(config_error_field(j) == "channels");
  j = small_config();
  j["channels"] = {"true", "true"};
  CHECK(config_error_field(j) == "channels");
  j = small_config();
  j["coordinatePermutation"] = {1, 1};
  CHECK(config_error_field(j) == "coordinatePermutation");
  j = small_config();
  j["grid"]["counts"] = {15, 0};
  CHECK(config_error_field(j) == "grid.counts[1]");
  j = small_config();
  j["n"] = 0;
  CHECK(config_error_field(j) == "n");

  CHECK_THROWS_AS(parse_config_text("{ not json"), ConfigError);
  CHECK_THROWS_AS(load_config(kConfigs / "does_not_exist.json"), IoError);
  CHECK(parse_channel_list("true,direct") == std::vector<Channel>{Channel::truth, Channel::direct});
  CHECK_THROWS_AS(parse_channel_list("true,nope"), ConfigError);
}

TEST_CASE("csv output shape") {
  const GridSpec grid(Point{-1.5, -1.5}, Point{1.5, 1.5}, {15, 15});
  RatioField field(grid);
  CHECK(field_to_csv(field) == "x1,x2,flags\n");
  field.add_channel(Channel::truth);
  field.add_channel(Channel::direct);
  const std::string csv = field_to_csv(field);
  CHECK(count_lines(csv) == 226);
  CHECK(csv.substr(0, csv.find('\n')) == "x1,x2,true,direct,flags");
  CHECK(csv.find("\n-1.5,-1.5,0,0,ok\n") != std::string::npos);
}

TEST_CASE("double formatting round-trips") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-1.5) == "-1.5");
  CHECK(format_double(100.0) == "100");
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::uint64_t> bits;
  std::vector<double> values;
  while (values.size() < 3000) {
    const double v = std::bit_cast<double>(bits(rng));
    if (std::isfinite(v)) values.push_back(v);
  }
  values.push_back(std::numeric_limits<double>::denorm_min());
  values.push_back(std::numeric_limits<double>::max());
  values.push_back(-0.0);
  if (values.size() % 2) values.push_back(1.0);
  const SampleSet s(2, values);
  const SampleSet back = parse_samples_csv(samples_to_csv(s));
  CHECK(back == s);
  CHECK(count_lines(samples_to_csv(s)) == s.size() + 1);
  CHECK_THROWS_AS(parse_samples_csv("x1,x2\n1,2\n3\n"), IoError);
  CHECK_THROWS_AS(parse_samples_csv("a,b\n1,2\n"), IoError);
  CHECK_THROWS_AS(parse_samples_csv("x1,x2\n1,zz\n"), IoError);
}

TEST_CASE("metrics") {
  RatioField field(GridSpec(Point{0.0}, Point{1.0}, {4}));
  field.add_channel(Channel::truth);
  field.add_channel(Channel::direct);
  field.add_channel(Channel::indirect);
  auto& t = field.channels[0].second;
  auto& d = field.channels[1].second;
  auto& i = field.channels[2].second;
  t = {1.0, 2.0, 3.0, 4.0};
  d = t;
  i = {2.0, 3.0, 4.0, 5.0};
  auto report = compute_metrics(field);
  CHECK(report.find(Channel::direct)->mse == 0.0);
  CHECK(report.find(Channel::direct)->max_abs_error == 0.0);
  CHECK(report.find(Channel::indirect)->mse == 1.0);
  CHECK(report.find(Channel::indirect)->median_abs_error == 1.0);
  CHECK(report.find(Channel::indirect)->max_abs_error == 1.0);
  CHECK(report.find(Channel::truth) == nullptr);

  i[2] = 0.0;
  field.flags[2] = kDivideByZero;
  report = compute_metrics(field);
  CHECK(report.find(Channel::indirect)->cells_used == 3);
  CHECK(report.find(Channel::indirect)->cells_excluded == 1);
  CHECK(report.find(Channel::indirect)->mse == 1.0);
  CHECK(report.find(Channel::direct)->cells_used == 4);

  d[1] = 7.0;
  field.flags[1] = kWeightFallback;
  report = compute_metrics(field);
  CHECK(report.find(Channel::direct)->cells_used == 3);
  CHECK(report.find(Channel::direct)->mse == 0.0);

  const json j = to_json(report);
  CHECK(j.contains("direct"));
  CHECK(j["indirect"]["cellsExcluded"] == 1);

  RatioField no_truth(GridSpec(Point{0.0}, Point{1.0}, {2}));
  no_truth.add_channel(Channel::direct);
  CHECK_THROWS_AS(compute_metrics(no_truth), std::invalid_argument);
}

TEST_CASE("experiments are reproducible") {
  const auto config = parse_config(small_config());
  const auto a = run_experiment(config);
  const auto b = run_experiment(config, RunOptions{3, simd::Isa::automatic});
  CHECK(field_to_csv(a.field) == field_to_csv(b.field));
  CHECK(samples_to_csv(*a.x) == samples_to_csv(*b.x));
  CHECK(a.direct_upper_bound == doctest::Approx(100.0));

  auto j = small_config();
  j["n"] = 50;
  const auto c = run_experiment(parse_config(j));
  CHECK(samples_to_csv(*c.y) == samples_to_csv(*a.y));
  CHECK(c.x->size() == 50);

  const auto replay = run_on_samples(config, *a.x, *a.y);
  CHECK(field_to_csv(replay.field) == field_to_csv(a.field));
}

TEST_CASE("truth-only experiments draw nothing") {
  auto j = small_config();
  j["channels"] = {"true"};
  const auto r = run_experiment(parse_config(j));
  CHECK_FALSE(r.x.has_value());
  CHECK_FALSE(r.y.has_value());
  CHECK(r.metrics.channels.empty());
  CHECK(r.field.channels.size() == 1);
}

TEST_CASE("permuted factorization runs end to end") {
  auto j = small_config();
  j["coordinatePermutation"] = {2, 1};
  const auto r = run_experiment(parse_config(j));
  for (double v : *r.field.find(Channel::direct)) {
    CHECK(std::isfinite(v));
    CHECK(v <= 100.0);
  }
}

TEST_CASE("radon-nikodym check report") {
  auto check = default_radon_nikodym_check();
  CHECK(check.points.size() == 9);
  check.draws = 20000;
  const auto a = run_radon_nikodym_check(check, 1);
  const auto b = run_radon_nikodym_check(check, 2);
  REQUIRE(a.points.size() == 9);
  for (std::size_t k = 0; k < 9; ++k) {
    CHECK(a.points[k].limit == b.points[k].limit);
    CHECK(a.points[k].truth == doctest::Approx(true_ratio(check.pair, a.points[k].z)));
  }
  check.h = 2.0;
  const auto wide = run_radon_nikodym_check(check, 1);
  CHECK_FALSE(wide.ok);
}

TEST_CASE("gnuplot script references every channel column") {
  RatioField field(GridSpec(Point{0.0, 0.0}, Point{1.0, 1.0}, {2, 2}));
  field.add_channel(Channel::truth);
  field.add_channel(Channel::direct);
  const auto script = gnuplot_script(field, "field.csv");
  CHECK(script.find("using 1:2:3") != std::string::npos);
  CHECK(script.find("using 1:2:4") != std::string::npos);
}
