#include "skewdiff/holder.hpp"

#include <cmath>
#include <stdexcept>

namespace skewdiff {

double holder_quarter_norm(const WienerPath& path, double window_end) {
  const TimeGrid& grid = path.grid();
  if (window_end > grid.horizon() * (1.0 + 1e-12)) {
    throw std::invalid_argument("Hölder window exceeds the path horizon");
  }
  // Nodes whose time is within the window, with slack for k*T/m rounding.
  std::size_t last = 0;
  while (last + 1 < grid.node_count() &&
         grid.time(last + 1) <= window_end + 1e-12 * grid.horizon()) {
    ++last;
  }
  if (last == 0) throw std::invalid_argument("Hölder window contains fewer than two nodes");

  const std::size_t dims = path.dims();
  double best = 0.0;
  for (std::size_t s = 0; s < last; ++s) {
    for (std::size_t t = s + 1; t <= last; ++t) {
      double sq = 0.0;
      for (std::size_t i = 0; i < dims; ++i) {
        const double d = path.at(t, i) - path.at(s, i);
        sq += d * d;
      }
      const double span = grid.time(t) - grid.time(s);
      best = std::max(best, std::sqrt(sq) / std::pow(span, 0.25));
    }
  }
  return best;
}

}  // namespace skewdiff
