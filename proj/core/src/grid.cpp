#include "skewdiff/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace skewdiff {

TimeGrid::TimeGrid(double horizon, std::size_t steps)
    : horizon_(horizon), steps_(steps) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("time grid horizon must be positive and finite");
  }
  if (steps == 0) {
    throw std::invalid_argument("time grid needs at least one step");
  }
}

TimeGrid make_grid(double horizon, std::size_t steps) {
  return TimeGrid(horizon, steps);
}

}  // namespace skewdiff
