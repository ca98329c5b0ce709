#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "skewdiff/grid.hpp"
#include "skewdiff/rng.hpp"

namespace skewdiff {

/// Discretized d-dimensional Wiener path. Values are stored node-major:
/// coordinate i at node k lives at values()[k * dims() + i].
class WienerPath {
 public:
  /// Takes ownership of explicit node values; values[0..dims) must be zero.
  WienerPath(TimeGrid grid, std::size_t dims, std::vector<double> values);

  const TimeGrid& grid() const { return grid_; }
  std::size_t dims() const { return dims_; }
  std::span<const double> values() const { return values_; }

  double at(std::size_t k, std::size_t i = 0) const {
    return values_[k * dims_ + i];
  }
  std::span<const double> node(std::size_t k) const {
    return std::span<const double>(values_).subspan(k * dims_, dims_);
  }
  /// w(t_{k+1}) - w(t_k) in coordinate i.
  double increment(std::size_t k, std::size_t i = 0) const {
    return values_[(k + 1) * dims_ + i] - values_[k * dims_ + i];
  }

  /// One coordinate as a standalone one-dimensional path.
  WienerPath coordinate(std::size_t i) const;

 private:
  TimeGrid grid_;
  std::size_t dims_;
  std::vector<double> values_;
};

/// Gaussian increments with covariance dt*I, drawn sequentially from `stream`.
WienerPath sample_wiener(const TimeGrid& grid, std::size_t dims,
                         RandomStream& stream);

}  // namespace skewdiff
