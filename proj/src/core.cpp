#include "kdre/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kdre {

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("Point: dimension must be >= 1");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("Point: non-finite coordinate");
  }
}

SampleSet::SampleSet(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (dim_ == 0) throw std::invalid_argument("SampleSet: dimension must be >= 1");
  if (data_.empty()) throw std::invalid_argument("SampleSet: empty sample");
  if (data_.size() % dim_ != 0)
    throw std::invalid_argument("SampleSet: data length is not a multiple of dim");
  for (double c : data_) {
    if (!std::isfinite(c)) throw std::invalid_argument("SampleSet: non-finite coordinate");
  }
}

SampleSet::SampleSet(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("SampleSet: empty sample");
  dim_ = points.front().dim();
  data_.reserve(points.size() * dim_);
  for (const auto& p : points) {
    if (p.dim() != dim_) throw std::invalid_argument("SampleSet: mixed dimensions");
    data_.insert(data_.end(), p.coords().begin(), p.coords().end());
  }
}

std::vector<double> SampleSet::column(std::size_t k) const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = data_[i * dim_ + k];
  return out;
}

GaussianSpec::GaussianSpec(Point mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  const auto d = static_cast<Eigen::Index>(mean_.dim());
  if (cov_.rows() != d || cov_.cols() != d)
    throw InvalidSpecError("GaussianSpec: covariance shape does not match mean");
  if (!cov_.allFinite()) throw InvalidSpecError("GaussianSpec: non-finite covariance");
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = r + 1; c < d; ++c) {
      if (std::abs(cov_(r, c) - cov_(c, r)) > 1e-12)
        throw InvalidSpecError("GaussianSpec: covariance is not symmetric");
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov_);
  if (llt.info() != Eigen::Success)
    throw InvalidSpecError("GaussianSpec: covariance is not positive definite");
  lower_ = llt.matrixL();
  for (Eigen::Index k = 0; k < d; ++k) {
    if (!(lower_(k, k) > 0.0))
      throw InvalidSpecError("GaussianSpec: covariance is not positive definite");
    log_det_ += 2.0 * std::log(lower_(k, k));
  }
}

void BandwidthSpec::validate(std::size_t dim) const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("bandwidth h must be > 0");
  if (epsilons.size() + 1 != dim)
    throw std::invalid_argument("expected " + std::to_string(dim - 1) + " epsilons, got " +
                                std::to_string(epsilons.size()));
  for (double e : epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("epsilon must be > 0");
  }
}

GridSpec::GridSpec(Point lower_, Point upper_, std::vector<std::size_t> counts_)
    : lower(std::move(lower_)), upper(std::move(upper_)), counts(std::move(counts_)) {
  if (lower.dim() != counts.size() || upper.dim() != counts.size())
    throw std::invalid_argument("GridSpec: lower/upper/counts dimension mismatch");
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (!(lower[k] < upper[k])) throw std::invalid_argument("GridSpec: lower must be < upper");
    if (counts[k] == 0) throw std::invalid_argument("GridSpec: counts must be positive");
  }
}

std::size_t GridSpec::size() const noexcept {
  std::size_t total = 1;
  for (auto c : counts) total *= c;
  return total;
}

double GridSpec::axis_value(std::size_t axis, std::size_t index) const {
  const std::size_t c = counts[axis];
  if (c == 1) return lower[axis];
  // Convex combination so both endpoints are reproduced exactly.
  const double t = static_cast<double>(index) / static_cast<double>(c - 1);
  return (1.0 - t) * lower[axis] + t * upper[axis];
}

Point GridSpec::point(std::size_t flat_index) const {
  std::vector<double> coords(dim());
  for (std::size_t k = dim(); k-- > 0;) {
    coords[k] = axis_value(k, flat_index % counts[k]);
    flat_index /= counts[k];
  }
  return Point(std::move(coords));
}

std::vector<Point> lattice_points(const GridSpec& grid) {
  std::vector<Point> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.push_back(grid.point(i));
  return out;
}

std::string_view channel_name(Channel c) noexcept {
  switch (c) {
    case Channel::truth: return "true";
    case Channel::direct: return "direct";
    case Channel::indirect: return "indirect";
  }
  return "?";
}

Channel parse_channel(std::string_view name) {
  if (name == "true") return Channel::truth;
  if (name == "direct") return Channel::direct;
  if (name == "indirect") return Channel::indirect;
  throw std::invalid_argument("unknown channel '" + std::string(name) + "'");
}

std::string format_flags(std::uint8_t flags) {
  if (flags == kCellOk) return "ok";
  std::string out;
  auto append = [&](const char* token) {
    if (!out.empty()) out += ';';
    out += token;
  };
  if (flags & kDivideByZero) append("divide-by-zero");
  if (flags & kWeightFallback) append("weight-fallback");
  return out;
}

Channel flag_channel(CellFlag flag) noexcept {
  return flag == kDivideByZero ? Channel::indirect : Channel::direct;
}

const std::vector<double>* RatioField::find(Channel c) const {
  for (const auto& [ch, values] : channels) {
    if (ch == c) return &values;
  }
  return nullptr;
}

std::vector<double>& RatioField::add_channel(Channel c) {
  if (find(c) != nullptr)
    throw std::invalid_argument("RatioField: duplicate channel " + std::string(channel_name(c)));
  channels.emplace_back(c, std::vector<double>(grid.size(), 0.0));
  return channels.back().second;
}

}  // namespace kdre
