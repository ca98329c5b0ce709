#include "skewdiff/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "skewdiff/errors.hpp"
#include "skewdiff/gaussian.hpp"
#include "skewdiff/quadrature.hpp"

namespace skewdiff {
namespace {

inline double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// The bump is dropped where it falls below e^{-32} of its peak, which keeps the
// local time confined to |x| < 8/n.
constexpr double kDriftCutoff = 8.0;

// Beyond this many units of the unscaled variable, Φ(v) is 0 or 1 in double.
constexpr double kFlatBeyond = 10.0;

double scale_integrand(double mass, double v) {
  // exp{-2(A(v) - A(0))} with A(v) = mass Φ(v).
  return std::exp(-2.0 * mass * (0.5 - gaussian_tail(v)));
}

double scale_constant(double mass) {
  return std::exp(-mass) / (1.0 + std::exp(-2.0 * mass));
}

void require_one_dimensional(const WienerPath& w) {
  if (w.dims() != 1) throw std::invalid_argument("skew Brownian motion needs a 1-d driver");
}

}  // namespace

void SbmParams::validate() const {
  if (!(std::abs(q) <= 1.0)) throw std::invalid_argument("skewing parameter needs |q| <= 1");
  if (mollifier_n == 0) throw std::invalid_argument("mollifier scale n must be >= 1");
  if (!std::isfinite(x0)) throw std::invalid_argument("start point must be finite");
}

double MollifiedDrift::profile(double x) const {
  return mass * kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double MollifiedDrift::operator()(double x) const {
  const double n = static_cast<double>(scale);
  return n * profile(n * x);
}

double MollifiedDrift::cumulative(double x) const {
  return mass * (1.0 - gaussian_tail(x));
}

double MollifiedDrift::lipschitz() const {
  return std::abs(mass) * kInvSqrt2Pi * std::exp(-0.5);
}

MollifiedDrift MollifiedDrift::for_skew(double q, std::size_t n) {
  if (n == 0) throw std::invalid_argument("mollifier scale n must be >= 1");
  return MollifiedDrift{skew_to_mass(q), n};
}

double SbmPath::identity_residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    worst = std::max(worst, std::abs(x[k] - x0 - q * eta[k] - driver->at(k)));
  }
  return worst;
}

double skew_to_mass(double q) {
  if (!(std::abs(q) < 1.0)) {
    throw std::domain_error("|q| >= 1 has infinite drift mass; use the reflected scheme");
  }
  return std::atanh(q);
}

double eval_mollified_drift(const MollifiedDrift& d, double x) { return d(x); }

double s_transform(const MollifiedDrift& d, double x) {
  const double n = static_cast<double>(d.scale);
  const double v = n * x;
  const double c = scale_constant(d.mass);
  const double reach = std::min(std::abs(v), kFlatBeyond);
  const double dir = v < 0.0 ? -1.0 : 1.0;
  auto g = [&](double u) { return scale_integrand(d.mass, dir * u); };
  double integral = integrate(g, 0.0, reach, 1e-13);
  if (std::abs(v) > kFlatBeyond) {
    integral += (std::abs(v) - kFlatBeyond) * scale_integrand(d.mass, dir * kFlatBeyond);
  }
  return dir * c * integral / n;
}

double s_derivative(const MollifiedDrift& d, double x) {
  const double n = static_cast<double>(d.scale);
  return scale_constant(d.mass) * scale_integrand(d.mass, n * x);
}

double s_inverse(const MollifiedDrift& d, double y) {
  if (y == 0.0) return 0.0;
  // Slopes lie between c e^{-|A|} and c e^{|A|}, which brackets the root.
  const double c = scale_constant(d.mass);
  const double min_slope = c * std::exp(-std::abs(d.mass));
  double lo = std::min(0.0, y / min_slope);
  double hi = std::max(0.0, y / min_slope);
  double x = space_map_inverse(std::tanh(d.mass), y);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double residual = s_transform(d, x) - y;
    if (residual > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (std::abs(residual) <= 1e-14 * std::max(1.0, std::abs(y))) return x;
    double next = x - residual / s_derivative(d, x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  throw NumericFailure("s_inverse did not converge");
}

double sigma_n(const MollifiedDrift& d, double y) {
  return s_derivative(d, s_inverse(d, y));
}

double limit_sigma(double q, double y) {
  if (!(std::abs(q) < 1.0)) throw std::domain_error("limit_sigma needs |q| < 1");
  return 0.5 * (1.0 - q * sign(y));
}

double space_map(double q, double x) {
  if (!(std::abs(q) < 1.0)) throw std::domain_error("space_map needs |q| < 1");
  return 0.5 * x * (1.0 - q * sign(x));
}

double space_map_inverse(double q, double y) {
  if (!(std::abs(q) < 1.0)) throw std::domain_error("space_map_inverse needs |q| < 1");
  return 2.0 * y / (1.0 - q * sign(y));
}

SbmPath simulate_sbm_mollified(const SbmParams& p, std::shared_ptr<const WienerPath> w) {
  p.validate();
  if (!w) throw std::invalid_argument("missing driver");
  require_one_dimensional(*w);
  if (!(std::abs(p.q) < 1.0)) {
    throw std::domain_error("|q| = 1 needs simulate_reflected");
  }
  const TimeGrid& grid = w->grid();
  const std::size_t nodes = grid.node_count();
  SbmPath path{grid, p.q, p.x0, std::vector<double>(nodes), std::vector<double>(nodes, 0.0), w, 0.0};
  path.x[0] = p.x0;

  if (p.q == 0.0) {
    for (std::size_t k = 0; k < nodes; ++k) path.x[k] = p.x0 + w->at(k);
    auto tanaka = tanaka_local_time(path.x, *w);
    path.eta = std::move(tanaka.eta);
    path.clamp = tanaka.clamp;
    return path;
  }

  const double n = static_cast<double>(p.mollifier_n);
  const double peak = n * skew_to_mass(p.q) * kInvSqrt2Pi * grid.dt();
  double drift_sum = 0.0;
  for (std::size_t k = 0; k + 1 < nodes; ++k) {
    const double z = n * path.x[k];
    if (std::abs(z) < kDriftCutoff) drift_sum += peak * std::exp(-0.5 * z * z);
    path.x[k + 1] = p.x0 + drift_sum + w->at(k + 1);
    path.eta[k + 1] = drift_sum / p.q;
  }
  return path;
}

SbmPath simulate_reflected(double x0, double q, std::shared_ptr<const WienerPath> w) {
  if (!w) throw std::invalid_argument("missing driver");
  require_one_dimensional(*w);
  if (q != 1.0 && q != -1.0) throw std::invalid_argument("reflected scheme needs q = +1 or -1");
  if (q * x0 < 0.0) throw std::invalid_argument("start point lies outside the reflected phase space");

  const TimeGrid& grid = w->grid();
  const std::size_t nodes = grid.node_count();
  SbmPath path{grid, q, x0, std::vector<double>(nodes), std::vector<double>(nodes, 0.0), w, 0.0};
  // x[k] = max(x0 + w[k], w[k] - min_{j<=k} w[j]) for q = +1. The second
  // argument does not involve x0, so ordering in x0 survives rounding.
  double extreme = 0.0;  // running min (q=+1) or max (q=-1) of w
  double push = 0.0;     // running max of -(x0 + w) (q=+1), of (x0 + w) (q=-1)
  for (std::size_t k = 0; k < nodes; ++k) {
    const double wk = w->at(k);
    const double free = x0 + wk;
    if (q > 0.0) {
      extreme = std::min(extreme, wk);
      push = std::max(push, -free);
      path.x[k] = std::max(free, wk - extreme);
    } else {
      extreme = std::max(extreme, wk);
      push = std::max(push, free);
      path.x[k] = std::min(free, wk - extreme);
    }
    path.eta[k] = push;
  }
  return path;
}

SbmPath simulate_sbm(const SbmParams& p, std::shared_ptr<const WienerPath> w) {
  p.validate();
  if (std::abs(p.q) == 1.0) return simulate_reflected(p.x0, p.q, std::move(w));
  return simulate_sbm_mollified(p, std::move(w));
}

TanakaEstimate tanaka_local_time(std::span<const double> x_path, const WienerPath& w) {
  require_one_dimensional(w);
  if (x_path.size() != w.grid().node_count()) {
    throw std::invalid_argument("path and driver lengths differ");
  }
  TanakaEstimate out{std::vector<double>(x_path.size(), 0.0), 0.0};
  const double start = std::abs(x_path[0]);
  double martingale = 0.0;
  for (std::size_t k = 1; k < x_path.size(); ++k) {
    martingale += sign(x_path[k - 1]) * w.increment(k - 1);
    const double raw = std::abs(x_path[k]) - start - martingale;
    out.eta[k] = std::max(out.eta[k - 1], raw);
    out.clamp = std::max(out.clamp, out.eta[k] - raw);
  }
  return out;
}

TransformedPath simulate_sbm_transformed(double q, double x0, const WienerPath& w) {
  require_one_dimensional(w);
  const std::size_t nodes = w.grid().node_count();
  TransformedPath out{w.grid(), std::vector<double>(nodes), std::vector<double>(nodes)};
  out.y[0] = space_map(q, x0);
  for (std::size_t k = 0; k + 1 < nodes; ++k) {
    out.y[k + 1] = out.y[k] + limit_sigma(q, out.y[k]) * w.increment(k);
  }
  for (std::size_t k = 0; k < nodes; ++k) out.x[k] = space_map_inverse(q, out.y[k]);
  out.x[0] = x0;
  return out;
}

}  // namespace skewdiff
