#include "skewdiff/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skewdiff/errors.hpp"

namespace skewdiff {

double gaussian_density(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double gaussian_tail(double z) {
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double inverse_gaussian_tail(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inverse_gaussian_tail needs p in (0, 1)");
  }
  // gaussian_tail(-40) = 1 and gaussian_tail(40) = 0 in double precision.
  double lo = -40.0;
  double hi = 40.0;
  double z = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = gaussian_tail(z) - p;  // decreasing in z
    if (residual > 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    const double slope = -gaussian_density(z);
    double next = slope != 0.0 ? z - residual / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-12 * std::max(1.0, std::abs(z)) ||
        hi - lo <= 1e-12) {
      return next;
    }
    z = next;
  }
  throw NumericFailure("inverse_gaussian_tail did not converge");
}

}  // namespace skewdiff
