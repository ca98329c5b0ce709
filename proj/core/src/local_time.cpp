#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skewdiff/gaussian.hpp"
#include "skewdiff/quadrature.hpp"
#include "skewdiff/sbm.hpp"

namespace skewdiff {
namespace {

void check_law(const LocalTimeLaw& law) {
  if (!(law.t > 0.0)) throw std::invalid_argument("local-time law needs t > 0");
}

}  // namespace

double local_time_cdf(const LocalTimeLaw& law, double a) {
  check_law(law);
  if (a <= 0.0) return 0.0;
  return 1.0 - 2.0 * gaussian_tail((std::abs(law.x) + a) / std::sqrt(law.t));
}

double local_time_cdf_right(const LocalTimeLaw& law, double a) {
  check_law(law);
  if (a < 0.0) return 0.0;
  if (a == 0.0) return local_time_atom(law);
  return local_time_cdf(law, a);
}

double local_time_atom(const LocalTimeLaw& law) {
  check_law(law);
  return 1.0 - 2.0 * gaussian_tail(std::abs(law.x) / std::sqrt(law.t));
}

double sample_local_time(const LocalTimeLaw& law, RandomStream& stream) {
  check_law(law);
  const double u = stream.uniform();
  if (u < local_time_atom(law)) return 0.0;
  // 1 - 2 Φ̄(z) = u on the continuous part.
  const double z = inverse_gaussian_tail(0.5 * (1.0 - u));
  return std::max(0.0, std::sqrt(law.t) * z - std::abs(law.x));
}

double expected_local_time(double x, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("expected_local_time needs t >= 0");
  if (t == 0.0) return 0.0;
  // τ = s²: ∫_0^{√t} sqrt(2/π) exp{-x²/(2s²)} ds, smooth at s = 0.
  const double c = std::sqrt(2.0 / std::numbers::pi);
  const double x2 = x * x;
  auto integrand = [&](double s) {
    if (s == 0.0) return x2 == 0.0 ? c : 0.0;
    return c * std::exp(-0.5 * x2 / (s * s));
  };
  return integrate(integrand, 0.0, std::sqrt(t), 1e-12);
}

}  // namespace skewdiff
