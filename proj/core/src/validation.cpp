#include "skewdiff/validation.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "skewdiff/parallel.hpp"
#include "skewdiff/stats.hpp"

namespace skewdiff {
namespace {

std::shared_ptr<const WienerPath> driver_for(const McConfig& cfg, std::size_t path) {
  auto stream = path_stream(cfg.seed, path, 0);
  return std::make_shared<const WienerPath>(
      sample_wiener(make_grid(cfg.horizon, cfg.steps), 1, stream));
}

}  // namespace

QuadraticVariationReport quadratic_variation_check(double q, double x0, const McConfig& cfg,
                                                   double tolerance) {
  if (cfg.paths == 0) throw std::invalid_argument("experiment needs paths");
  struct Sums {
    double realized = 0.0;
    double predicted = 0.0;
    double reverse_realized = 0.0;
    double reverse_predicted = 0.0;
  };
  const SbmParams params{q, x0, cfg.mollifier_n};
  const double dt = make_grid(cfg.horizon, cfg.steps).dt();
  const auto sums = parallel_map(cfg.paths, cfg.workers, [&](std::size_t p) {
    const auto path = simulate_sbm_mollified(params, driver_for(cfg, p));
    Sums s;
    for (std::size_t k = 0; k + 1 < path.x.size(); ++k) {
      const double y0 = space_map(q, path.x[k]);
      const double y1 = space_map(q, path.x[k + 1]);
      s.realized += (y1 - y0) * (y1 - y0);
      s.predicted += limit_sigma(q, y0) * limit_sigma(q, y0) * dt;
      const double r0 = space_map_inverse(q, path.x[k]);
      const double r1 = space_map_inverse(q, path.x[k + 1]);
      s.reverse_realized += (r1 - r0) * (r1 - r0);
      s.reverse_predicted += limit_sigma(q, r0) * limit_sigma(q, r0) * dt;
    }
    return s;
  });
  std::vector<double> realized, predicted, reverse_realized, reverse_predicted;
  for (const auto& s : sums) {
    realized.push_back(s.realized);
    predicted.push_back(s.predicted);
    reverse_realized.push_back(s.reverse_realized);
    reverse_predicted.push_back(s.reverse_predicted);
  }
  QuadraticVariationReport r;
  r.realized = compensated_sum(realized);
  r.predicted = compensated_sum(predicted);
  r.ratio = r.realized / r.predicted;
  r.reverse_ratio = compensated_sum(reverse_realized) / compensated_sum(reverse_predicted);
  r.tolerance = tolerance;
  r.pass = std::abs(r.ratio - 1.0) <= tolerance;
  return r;
}

CrossSchemeReport cross_scheme_check(double q, double x0, const McConfig& cfg,
                                     double threshold) {
  if (cfg.paths == 0) throw std::invalid_argument("experiment needs paths");
  const SbmParams params{q, x0, cfg.mollifier_n};
  struct Pair {
    double mollified = 0.0;
    double transformed = 0.0;
  };
  const auto terminals = parallel_map(cfg.paths, cfg.workers, [&](std::size_t p) {
    const auto w = driver_for(cfg, p);
    return Pair{simulate_sbm_mollified(params, w).x.back(),
                simulate_sbm_transformed(q, x0, *w).x.back()};
  });
  std::vector<double> a, b;
  for (const auto& t : terminals) {
    a.push_back(t.mollified);
    b.push_back(t.transformed);
  }
  CrossSchemeReport r;
  r.ks = ks_distance(EmpiricalCdf(std::move(a)), EmpiricalCdf(std::move(b)));
  r.threshold = threshold;
  r.pass = r.ks <= threshold;
  return r;
}

EtaSamplerReport eta_sampler_check(const LocalTimeLaw& law, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("eta sampler check needs at least two samples");
  auto stream = derive_stream(seed, 0);
  std::vector<double> values(samples);
  for (auto& v : values) v = sample_local_time(law, stream);

  EtaSamplerReport r;
  r.atom = local_time_atom(law);
  std::vector<double> zeros(samples);
  std::vector<double> positive;
  for (std::size_t i = 0; i < samples; ++i) {
    zeros[i] = values[i] == 0.0 ? 1.0 : 0.0;
    if (values[i] > 0.0) positive.push_back(values[i]);
  }
  r.zero_fraction = mc_summary(zeros);
  r.mean = mc_summary(values);
  r.mean_target = expected_local_time(law.x, law.t);

  r.ks = ks_distance(EmpiricalCdf(values),
                     [&](double a) { return local_time_cdf_right(law, a); },
                     [&](double a) { return local_time_cdf(law, a); });
  r.threshold = ks_critical_1pct(samples);
  r.ks_positive = 0.0;
  r.threshold_positive = 0.0;
  bool positive_ok = true;
  if (positive.size() >= 2) {
    const double atom = r.atom;
    auto conditional = [&](double a) {
      return a <= 0.0 ? 0.0 : (local_time_cdf(law, a) - atom) / (1.0 - atom);
    };
    r.threshold_positive = ks_critical_1pct(positive.size());
    r.ks_positive = ks_distance(EmpiricalCdf(std::move(positive)), conditional);
    positive_ok = r.ks_positive <= r.threshold_positive;
  }
  r.pass = r.ks <= r.threshold && positive_ok;
  return r;
}

SchemeLawReport scheme_law_check(double q, double x0, const McConfig& cfg, double ks_threshold) {
  if (cfg.paths < 2) throw std::invalid_argument("experiment needs at least two paths");
  const SbmParams params{q, x0, cfg.mollifier_n};
  params.validate();
  const auto eta = parallel_map(cfg.paths, cfg.workers, [&](std::size_t p) {
    return simulate_sbm(params, driver_for(cfg, p)).eta.back();
  });
  const LocalTimeLaw law{x0, cfg.horizon};
  SchemeLawReport r;
  r.mean = check_target(mc_summary(eta), expected_local_time(x0, cfg.horizon));
  r.ks = ks_distance(EmpiricalCdf(eta),
                     [&](double a) { return local_time_cdf_right(law, a); },
                     [&](double a) { return local_time_cdf(law, a); });
  r.ks_threshold = ks_threshold;
  r.pass = r.mean.pass && r.ks <= ks_threshold;
  return r;
}

}  // namespace skewdiff
