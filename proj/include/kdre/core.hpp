#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace kdre {

// Error hierarchy. The CLI maps each kind to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

//! A point in R^d with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}
  explicit Point(std::span<const double> coords)
      : Point(std::vector<double>(coords.begin(), coords.end())) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  std::span<const double> span() const noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

//! Ordered, homogeneous collection of d-dimensional points.
//!
//! Storage is row-major (point i occupies [i*d, (i+1)*d)). Columns can be
//! materialized with column() for kernels that stream over one coordinate.
class SampleSet {
 public:
  SampleSet(std::size_t dim, std::vector<double> row_major);
  explicit SampleSet(const std::vector<Point>& points);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size() / dim_; }
  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  double at(std::size_t i, std::size_t k) const { return data_[i * dim_ + k]; }
  const std::vector<double>& data() const noexcept { return data_; }
  std::vector<double> column(std::size_t k) const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

//! N(mean, cov) with a validated symmetric positive definite covariance.
class GaussianSpec {
 public:
  GaussianSpec(Point mean, Eigen::MatrixXd cov);

  std::size_t dim() const noexcept { return mean_.dim(); }
  const Point& mean() const noexcept { return mean_; }
  const Eigen::MatrixXd& cov() const noexcept { return cov_; }
  //! Lower Cholesky factor L with cov = L L^T.
  const Eigen::MatrixXd& chol_lower() const noexcept { return lower_; }
  double log_det() const noexcept { return log_det_; }

 private:
  Point mean_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd lower_;
  double log_det_ = 0.0;
};

struct BandwidthSpec {
  double h = 0.1;
  std::vector<double> epsilons;  // d-1 entries

  //! Throws std::invalid_argument when h or an epsilon is not positive or
  //! the epsilon count does not match dim - 1.
  void validate(std::size_t dim) const;
};

struct GridSpec {
  Point lower;
  Point upper;
  std::vector<std::size_t> counts;

  GridSpec(Point lower_, Point upper_, std::vector<std::size_t> counts_);

  std::size_t dim() const noexcept { return counts.size(); }
  std::size_t size() const noexcept;
  double axis_value(std::size_t axis, std::size_t index) const;
  //! Lattice point at a flat row-major index (last axis fastest).
  Point point(std::size_t flat_index) const;
};

//! Equally spaced lattice, endpoints inclusive, last axis varying fastest.
std::vector<Point> lattice_points(const GridSpec& grid);

enum class Channel { truth, direct, indirect };

std::string_view channel_name(Channel c) noexcept;
Channel parse_channel(std::string_view name);

// Per-cell status bits.
enum CellFlag : std::uint8_t {
  kCellOk = 0,
  kDivideByZero = 1u << 0,
  kWeightFallback = 1u << 1,
};

std::string format_flags(std::uint8_t flags);

//! Channel this flag bit is attributed to when deciding metric exclusion.
Channel flag_channel(CellFlag flag) noexcept;

struct RatioField {
  GridSpec grid;
  std::vector<std::pair<Channel, std::vector<double>>> channels;
  std::vector<std::uint8_t> flags;

  explicit RatioField(GridSpec g) : grid(std::move(g)), flags(grid.size(), kCellOk) {}

  const std::vector<double>* find(Channel c) const;
  std::vector<double>& add_channel(Channel c);
};

}  // namespace kdre
