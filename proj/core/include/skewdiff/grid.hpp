#pragma once

#include <cstddef>

namespace skewdiff {

/// Uniform time grid on [0, horizon] with `steps` intervals.
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t steps);

  double horizon() const { return horizon_; }
  std::size_t steps() const { return steps_; }
  std::size_t node_count() const { return steps_ + 1; }
  double dt() const { return horizon_ / static_cast<double>(steps_); }

  /// Node times are computed as k*horizon/steps so the last node is the
  /// horizon exactly.
  double time(std::size_t k) const {
    return static_cast<double>(k) * horizon_ / static_cast<double>(steps_);
  }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double horizon_;
  std::size_t steps_;
};

TimeGrid make_grid(double horizon, std::size_t steps);

}  // namespace skewdiff
