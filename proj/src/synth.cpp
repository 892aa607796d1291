#include "kdre/synth.hpp"

#include <cmath>
#include <stdexcept>

namespace kdre {
namespace {

std::mt19937_64 make_engine(SeededStream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(stream.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(stream.seed >> 32), stream.stream_id};
  return std::mt19937_64(seq);
}

}  // namespace

NormalStream::NormalStream(SeededStream stream) : engine_(make_engine(stream)) {}

double NormalStream::uniform_pm1() {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

double NormalStream::next() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u, v, s;
  do {
    u = uniform_pm1();
    v = uniform_pm1();
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  return u * factor;
}

MvnSampler::MvnSampler(const GaussianSpec& spec, SeededStream stream)
    : spec_(&spec), normals_(stream), w_(spec.dim()) {}

void MvnSampler::next(std::span<double> out) {
  const std::size_t d = spec_->dim();
  const auto& L = spec_->chol_lower();
  for (auto& w : w_) w = normals_.next();
  for (std::size_t r = 0; r < d; ++r) {
    double acc = spec_->mean()[r];
    for (std::size_t c = 0; c <= r; ++c)
      acc += L(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * w_[c];
    out[r] = acc;
  }
}

SampleSet sample_mvn(const GaussianSpec& spec, std::size_t count, SeededStream stream) {
  if (count == 0) throw std::invalid_argument("sample_mvn: count must be >= 1");
  const std::size_t d = spec.dim();
  std::vector<double> data(count * d);
  MvnSampler sampler(spec, stream);
  for (std::size_t i = 0; i < count; ++i) sampler.next({data.data() + i * d, d});
  return SampleSet(d, std::move(data));
}

}  // namespace kdre
