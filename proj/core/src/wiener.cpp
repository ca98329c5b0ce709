#include "skewdiff/wiener.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace skewdiff {

WienerPath::WienerPath(TimeGrid grid, std::size_t dims, std::vector<double> values)
    : grid_(grid), dims_(dims), values_(std::move(values)) {
  if (dims_ == 0) throw std::invalid_argument("Wiener path needs dims >= 1");
  if (values_.size() != grid_.node_count() * dims_) {
    throw std::invalid_argument("Wiener path value count does not match grid");
  }
  for (std::size_t i = 0; i < dims_; ++i) {
    if (values_[i] != 0.0) {
      throw std::invalid_argument("Wiener path must start at the origin");
    }
  }
}

WienerPath WienerPath::coordinate(std::size_t i) const {
  if (i >= dims_) throw std::out_of_range("Wiener path coordinate");
  std::vector<double> out(grid_.node_count());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = at(k, i);
  return WienerPath(grid_, 1, std::move(out));
}

WienerPath sample_wiener(const TimeGrid& grid, std::size_t dims,
                         RandomStream& stream) {
  if (dims == 0) throw std::invalid_argument("Wiener path needs dims >= 1");
  const double scale = std::sqrt(grid.dt());
  std::vector<double> values(grid.node_count() * dims, 0.0);
  for (std::size_t k = 1; k < grid.node_count(); ++k) {
    for (std::size_t i = 0; i < dims; ++i) {
      values[k * dims + i] = values[(k - 1) * dims + i] + scale * stream.normal();
    }
  }
  return WienerPath(grid, dims, std::move(values));
}

}  // namespace skewdiff
