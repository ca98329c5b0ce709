#include "skewdiff/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "skewdiff/errors.hpp"

namespace skewdiff {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(a <= b)) throw std::invalid_argument("integration bounds need a <= b");
  if (a == b) return 0.0;
  constexpr unsigned kMaxDepth = 20;
  // Boost compares an unscaled error estimate against a scaled tolerance, so
  // very short intervals never converge. Integrating over [0, 1] avoids that.
  const double width = b - a;
  auto unit = [&](double u) { return width * f(a + width * u); };
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      unit, 0.0, 1.0, kMaxDepth, rel_tol, &error, &l1);
  if (!std::isfinite(value)) throw NumericFailure("quadrature produced a non-finite value");
  // Near-cancelling integrands are judged against ∫|f|, with a floor at
  // machine epsilon for the rounding in the Kronrod sum itself.
  const double allowed = std::max(rel_tol, 1e-15) * std::max(l1, 1e-300);
  if (error > allowed && error > 64.0 * 2.2e-16 * l1) {
    throw NumericFailure("quadrature did not reach the requested tolerance");
  }
  return value;
}

}  // namespace skewdiff
