#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "kdre/estimators.hpp"
#include "kdre/synth.hpp"

using namespace kdre;

namespace {

GaussianSpec g_spec() {
  Eigen::MatrixXd cov(2, 2);
  cov << 0.5, 0.1, 0.1, 0.5;
  return GaussianSpec(Point{0.0, 0.0}, cov);
}

GaussianSpec f_spec() {
  Eigen::MatrixXd cov(2, 2);
  cov << 0.3, 0.1, 0.1, 0.3;
  return GaussianSpec(Point{0.0, -0.5}, cov);
}

// Univariate direct estimator written out term by term.
double univariate_transcription(const std::vector<double>& x, const std::vector<double>& y,
                                double h, double z) {
  auto ecdf_count = [&](double t) {
    double c = 0;
    for (double v : y) c += v <= t ? 1.0 : 0.0;
    return c / static_cast<double>(y.size());
  };
  const double fz = ecdf_count(z);
  double sum = 0;
  for (double xi : x) {
    const double u = (fz - ecdf_count(xi)) / h;
    sum += (u >= -0.5 && u <= 0.5) ? 1.0 : 0.0;
  }
  return sum / (static_cast<double>(x.size()) * h);
}

}  // namespace

TEST_CASE("kde of a single point at the origin") {
  const SampleSet s(2, {0.0, 0.0});
  CHECK(kde(s, KernelSpec{KernelFamily::gaussian_product, 2}, 1.0, std::vector<double>{0.0, 0.0}) ==
        doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(kde(s, KernelSpec{KernelFamily::boxcar, 2}, 0.5, std::vector<double>{0.2, 0.0}) == 4.0);
}

TEST_CASE("kde integrates to one") {
  const SampleSet y = sample_mvn(g_spec(), 10000, SeededStream{1, kYStream});
  const KernelDensity density(y, KernelSpec{KernelFamily::gaussian_product, 2}, 0.1);
  const double step = 0.05;
  double sum = 0;
  for (int i = 0; i < 240; ++i)
    for (int j = 0; j < 240; ++j) {
      const double z[] = {-6.0 + (i + 0.5) * step, -6.0 + (j + 0.5) * step};
      sum += density(z);
    }
  CHECK(std::abs(sum * step * step - 1.0) <= 0.01);
}

TEST_CASE("indirect estimator") {
  const SampleSet y = sample_mvn(g_spec(), 200, SeededStream{2, kYStream});
  SUBCASE("identical samples give ratio one") {
    const IndirectKdre model(y, y, KernelFamily::gaussian_product, 0.1, 0.1);
    for (double a : {-0.5, 0.0, 0.7}) {
      const auto est = estimate_indirect(model, std::vector<double>{a, -a});
      CHECK(est.value == 1.0);
      CHECK(est.flags == kCellOk);
    }
  }
  SUBCASE("ratio of the two density estimates") {
    const SampleSet x = sample_mvn(f_spec(), 150, SeededStream{2, kXStream});
    const IndirectKdre model(x, y, KernelFamily::gaussian_product, 0.1, 0.2);
    const std::vector<double> z{0.1, -0.2};
    const double f = kde(x, KernelSpec{KernelFamily::gaussian_product, 2}, 0.1, z);
    const double g = kde(y, KernelSpec{KernelFamily::gaussian_product, 2}, 0.2, z);
    CHECK(model.estimate(z).value == doctest::Approx(f / g).epsilon(1e-14));
  }
  SUBCASE("zero denominator is flagged") {
    const SampleSet far(2, {50.0, 50.0});
    const IndirectKdre model(y, far, KernelFamily::gaussian_product, 0.1, 0.1);
    const auto est = model.estimate(std::vector<double>{0.0, 0.0});
    CHECK(est.value == 0.0);
    CHECK(est.flags == kDivideByZero);
  }
}

TEST_CASE("direct estimator small examples") {
  const SampleSet one(1, {0.0});
  const auto m1 = fit_direct(one, one, BandwidthSpec{1.0, {}}, KernelFamily::boxcar,
                             KernelFamily::gaussian_radial);
  CHECK(m1.cache() == std::vector<double>{1.0});
  CHECK(estimate_direct(m1, std::vector<double>{0.0}) == 1.0);

  const auto m2 = fit_direct(SampleSet(1, {0.5}), SampleSet(1, {0.0, 1.0}),
                             BandwidthSpec{0.1, {}}, KernelFamily::boxcar,
                             KernelFamily::gaussian_radial);
  CHECK(m2.cache() == std::vector<double>{0.5});
  CHECK(estimate_direct(m2, std::vector<double>{0.5}) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(estimate_direct(m2, std::vector<double>{2.0}) == 0.0);
}

TEST_CASE("direct estimator reduces to the univariate transcription") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> size(1, 60);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(size(rng)), y(size(rng));
    for (auto& v : x) v = normal(rng);
    for (auto& v : y) v = 0.3 + 1.2 * normal(rng);
    const double h = 0.05 + 0.01 * (trial % 20);
    const auto model = fit_direct(SampleSet(1, x), SampleSet(1, y), BandwidthSpec{h, {}},
                                  KernelFamily::boxcar, KernelFamily::gaussian_radial);
    for (int k = 0; k < 10; ++k) {
      const double z = 1.5 * normal(rng);
      CHECK(estimate_direct(model, std::vector<double>{z}) ==
            univariate_transcription(x, y, h, z));
    }
  }
}

TEST_CASE("direct estimate never exceeds the kernel bound") {
  const SampleSet x = sample_mvn(f_spec(), 500, SeededStream{3, kXStream});
  const SampleSet y = sample_mvn(g_spec(), 500, SeededStream{3, kYStream});
  const auto model = fit_direct(x, y, BandwidthSpec{0.1, {0.1}}, KernelFamily::boxcar,
                                KernelFamily::gaussian_radial);
  CHECK(model.upper_bound() == doctest::Approx(100.0).epsilon(1e-12));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = estimate_direct(model, std::vector<double>{u(rng), u(rng)});
    CHECK(v >= 0.0);
    CHECK(v <= model.upper_bound());
  }
  // Stacking every X point on z saturates the bound.
  const SampleSet same(2, {0.2, 0.2, 0.2, 0.2, 0.2, 0.2});
  const auto sat = fit_direct(same, y, BandwidthSpec{0.1, {0.1}}, KernelFamily::boxcar,
                              KernelFamily::gaussian_radial);
  CHECK(estimate_direct(sat, std::vector<double>{0.2, 0.2}) ==
        doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("cached transform is the conditional cdf of each X point") {
  const SampleSet x = sample_mvn(f_spec(), 300, SeededStream{5, kXStream});
  const SampleSet y = sample_mvn(g_spec(), 400, SeededStream{5, kYStream});
  const auto model = fit_direct(x, y, BandwidthSpec{0.1, {0.1}}, KernelFamily::boxcar,
                                KernelFamily::gaussian_radial);
  const double h = model.bandwidth();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto again = model.cdf_model().evaluate(x.point(i));
    CHECK(again[0] == model.cached(i)[0]);
    CHECK(again[1] == model.cached(i)[1]);
  }
  // Every kernel argument lies in [-1/h, 1/h].
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 50; ++k) {
    const auto hz = model.cdf_model().evaluate(std::vector<double>{u(rng), u(rng)});
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t c = 0; c < 2; ++c) {
        const double arg = (hz[c] - model.cached(i)[c]) / h;
        CHECK(std::abs(arg) <= 1.0 / h);
      }
  }
}

TEST_CASE("fits and fields are independent of the thread count") {
  const SampleSet x = sample_mvn(f_spec(), 400, SeededStream{6, kXStream});
  const SampleSet y = sample_mvn(g_spec(), 400, SeededStream{6, kYStream});
  DirectKdre::Options one, four;
  four.threads = 4;
  const DirectKdre a(x, y, BandwidthSpec{0.1, {0.1}}, one);
  const DirectKdre b(x, y, BandwidthSpec{0.1, {0.1}}, four);
  CHECK(a.cache() == b.cache());

  const GridSpec grid(Point{-1.5, -1.5}, Point{1.5, 1.5}, {15, 15});
  std::vector<ChannelSource> sources{
      {Channel::direct, [&a](std::span<const double> z) { return a.estimate(z); }}};
  const auto f1 = evaluate_field(grid, sources, 1);
  const auto f3 = evaluate_field(grid, sources, 3);
  CHECK(f1.channels == f3.channels);
  CHECK(f1.flags == f3.flags);
  CHECK(f1.channels.at(0).second.size() == 225);
}

TEST_CASE("field with no sources has no channels") {
  const auto field = evaluate_field(GridSpec(Point{0.0}, Point{1.0}, {5}), {});
  CHECK(field.channels.empty());
  CHECK(field.flags == std::vector<std::uint8_t>(5, kCellOk));
}

TEST_CASE("field flags are the union of source flags") {
  std::vector<ChannelSource> sources{
      {Channel::direct, [](std::span<const double> z) {
         return RatioEstimate{1.0, z[0] > 0.5 ? std::uint8_t{kWeightFallback} : std::uint8_t{0}};
       }},
      {Channel::indirect, [](std::span<const double> z) {
         return RatioEstimate{0.0, z[0] < 0.5 ? std::uint8_t{kDivideByZero} : std::uint8_t{0}};
       }}};
  const auto field = evaluate_field(GridSpec(Point{0.0}, Point{1.0}, {3}), sources);
  CHECK(field.flags == std::vector<std::uint8_t>{kDivideByZero, kCellOk, kWeightFallback});
}

TEST_CASE("mismatched inputs are rejected") {
  const SampleSet x2(2, {0.0, 0.0});
  const SampleSet y1(1, {0.0});
  CHECK_THROWS(fit_direct(x2, y1, BandwidthSpec{0.1, {}}, KernelFamily::boxcar,
                          KernelFamily::gaussian_radial));
  CHECK_THROWS(fit_direct(x2, x2, BandwidthSpec{0.1, {}}, KernelFamily::boxcar,
                          KernelFamily::gaussian_radial));
  const auto model = fit_direct(x2, x2, BandwidthSpec{0.1, {0.1}}, KernelFamily::boxcar,
                                KernelFamily::gaussian_radial);
  CHECK_THROWS(model.estimate(std::vector<double>{0.0}));
}
