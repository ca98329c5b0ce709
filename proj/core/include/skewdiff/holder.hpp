#pragma once

#include "skewdiff/wiener.hpp"

namespace skewdiff {

/// Discrete Hölder-1/4 seminorm of a path on [0, window_end]:
/// max over node pairs s < t of |w(t) - w(s)| / (t - s)^{1/4}, using the
/// Euclidean norm for multi-dimensional paths.
double holder_quarter_norm(const WienerPath& path, double window_end);

}  // namespace skewdiff
