#include "skewdiff/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skewdiff/parallel.hpp"

namespace skewdiff {

TargetCheck check_target(const McSummary& estimate, double target, double allowance) {
  TargetCheck out{estimate, target, allowance, false};
  out.pass = std::abs(estimate.mean - target) <=
             estimate.half_width() + allowance * std::abs(target);
  return out;
}

BoundCheck check_bound(const McSummary& estimate, double bound) {
  return BoundCheck{estimate, bound, estimate.lower() <= bound};
}

namespace {

std::shared_ptr<const WienerPath> driver_for(const McConfig& cfg, std::size_t path) {
  auto stream = path_stream(cfg.seed, path, 0);
  return std::make_shared<const WienerPath>(
      sample_wiener(make_grid(cfg.horizon, cfg.steps), 1, stream));
}

void require_paths(const McConfig& cfg) {
  if (cfg.paths < 2) throw std::invalid_argument("experiment needs at least two paths");
}

}  // namespace

std::pair<MollifiedDrift, MollifiedDrift> make_comparable_drifts(double q1, double q2,
                                                                 std::size_t n) {
  if (q1 > q2) throw std::invalid_argument("comparable drifts need q1 <= q2");
  const auto a1 = MollifiedDrift::for_skew(q1, n);
  const auto a2 = MollifiedDrift::for_skew(q2, n);
  return {a1, a2};
}

CoupledPair simulate_coupled_pair(const SbmParams& p1, const SbmParams& p2,
                                  std::shared_ptr<const WienerPath> w) {
  p1.validate();
  p2.validate();
  const bool reflected1 = std::abs(p1.q) == 1.0;
  const bool reflected2 = std::abs(p2.q) == 1.0;
  if (reflected1 != reflected2) {
    throw std::invalid_argument("coupled pair mixes reflected and skew regimes");
  }
  if (reflected1 && p1.q != p2.q) {
    throw std::invalid_argument("reflected pair needs a common phase space");
  }
  auto path1 = simulate_sbm(p1, w);
  auto path2 = simulate_sbm(p2, w);
  return CoupledPair{p1, p2, std::move(path1), std::move(path2)};
}

double max_ordering_violation(const CoupledPair& pair) {
  double worst = 0.0;
  for (std::size_t k = 0; k < pair.path1.x.size(); ++k) {
    worst = std::max(worst, pair.path1.x[k] - pair.path2.x[k]);
  }
  return worst;
}

OrderingReport check_ordering(const CoupledPair& pair, double tolerance) {
  const double v = max_ordering_violation(pair);
  return summarize_ordering(std::span<const double>(&v, 1), tolerance);
}

OrderingReport summarize_ordering(std::span<const double> per_path_max, double tolerance) {
  OrderingReport out;
  out.tolerance = tolerance;
  out.paths = per_path_max.size();
  if (per_path_max.empty()) return out;
  std::vector<double> sorted(per_path_max.begin(), per_path_max.end());
  std::sort(sorted.begin(), sorted.end());
  out.max_violation = sorted.back();
  const auto over = std::count_if(sorted.begin(), sorted.end(),
                                  [tolerance](double v) { return v > tolerance; });
  out.violating_fraction = static_cast<double>(over) / static_cast<double>(sorted.size());
  const std::size_t mid = sorted.size() / 2;
  out.median_violation =
      sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return out;
}

double ordering_tolerance(double dt, double c) { return c * std::sqrt(dt); }

std::vector<double> ordering_violations(const SbmParams& p1, const SbmParams& p2,
                                        const McConfig& cfg) {
  return parallel_map(cfg.paths, cfg.workers, [&](std::size_t path) {
    return max_ordering_violation(simulate_coupled_pair(p1, p2, driver_for(cfg, path)));
  });
}

TargetCheck corollary1_experiment(double x, double q1, double q2, const McConfig& cfg,
                                  double allowance) {
  require_paths(cfg);
  const SbmParams p1{q1, x, cfg.mollifier_n};
  const SbmParams p2{q2, x, cfg.mollifier_n};
  if (!(std::abs(q1) < 1.0 && std::abs(q2) < 1.0)) {
    throw std::domain_error("corollary 1 experiment needs |q1|, |q2| < 1");
  }
  const auto distances = parallel_map(cfg.paths, cfg.workers, [&](std::size_t path) {
    const auto pair = simulate_coupled_pair(p1, p2, driver_for(cfg, path));
    return std::abs(pair.path1.x.back() - pair.path2.x.back());
  });
  const double target = std::abs(q1 - q2) * expected_local_time(x, cfg.horizon);
  return check_target(mc_summary(distances), target, allowance);
}

Corollary2Report corollary2_experiment(double x01, double x02, double q,
                                       const McConfig& cfg) {
  require_paths(cfg);
  if (q == 0.0 || !(std::abs(q) < 1.0)) {
    throw std::domain_error("corollary 2 experiment needs q in (-1,0) or (0,1)");
  }
  const SbmParams p1{q, x01, cfg.mollifier_n};
  const SbmParams p2{q, x02, cfg.mollifier_n};
  struct Terminal {
    double distance = 0.0;
    double local_time = 0.0;
  };
  const auto terminals = parallel_map(cfg.paths, cfg.workers, [&](std::size_t path) {
    const auto pair = simulate_coupled_pair(p1, p2, driver_for(cfg, path));
    return Terminal{std::abs(pair.path1.x.back() - pair.path2.x.back()),
                    std::abs(pair.path1.eta.back() - pair.path2.eta.back())};
  });
  std::vector<double> distances(terminals.size());
  std::vector<double> local_times(terminals.size());
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    distances[i] = terminals[i].distance;
    local_times[i] = terminals[i].local_time;
  }
  const double dx = std::abs(x01 - x02);
  const double di = std::abs(expected_local_time(x01, cfg.horizon) -
                             expected_local_time(x02, cfg.horizon));
  return Corollary2Report{check_bound(mc_summary(distances), dx + std::abs(q) * di),
                          check_bound(mc_summary(local_times), dx / std::abs(q) + di)};
}

BoundCheck remark1_experiment(double x01, double x02, double q, const McConfig& cfg) {
  require_paths(cfg);
  if (q != 1.0 && q != -1.0) throw std::invalid_argument("remark 1 experiment needs q = +1 or -1");
  const SbmParams p1{q, x01, cfg.mollifier_n};
  const SbmParams p2{q, x02, cfg.mollifier_n};
  const auto squares = parallel_map(cfg.paths, cfg.workers, [&](std::size_t path) {
    const auto pair = simulate_coupled_pair(p1, p2, driver_for(cfg, path));
    const double d = pair.path1.x.back() - pair.path2.x.back();
    return d * d;
  });
  return check_bound(mc_summary(squares), (x01 - x02) * (x01 - x02));
}

double remark2_bound(double x01, double x02, double t) {
  const double d = std::abs(x01 - x02);
  return 16.0 * d * d + 8.0 * std::sqrt(t) / std::sqrt(std::numbers::pi) * d;
}

BoundCheck remark2_experiment(double x01, double x02, const McConfig& cfg) {
  require_paths(cfg);
  const SbmParams p1{0.0, x01, cfg.mollifier_n};
  const SbmParams p2{0.0, x02, cfg.mollifier_n};
  const auto squares = parallel_map(cfg.paths, cfg.workers, [&](std::size_t path) {
    const auto pair = simulate_coupled_pair(p1, p2, driver_for(cfg, path));
    const double d = pair.path1.eta.back() - pair.path2.eta.back();
    return d * d;
  });
  return check_bound(mc_summary(squares), remark2_bound(x01, x02, cfg.horizon));
}

std::vector<BoundSuiteCase> bound_suite(std::size_t cases, double dt, const McConfig& cfg) {
  if (!(dt > 0.0)) throw std::invalid_argument("bound suite needs dt > 0");
  auto params = derive_stream(mix_seed(cfg.seed, 0xB0D5), 0);
  std::vector<BoundSuiteCase> out;
  out.reserve(cases);
  for (std::size_t i = 0; i < cases; ++i) {
    BoundSuiteCase c;
    c.x01 = 2.0 * params.uniform() - 1.0;
    c.x02 = 2.0 * params.uniform() - 1.0;
    const double magnitude = 0.05 + 0.75 * params.uniform();
    c.q = params.uniform() < 0.5 ? -magnitude : magnitude;
    c.t = 0.25 + 1.75 * params.uniform();

    McConfig run = cfg;
    run.horizon = c.t;
    run.steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(c.t / dt)));

    run.seed = mix_seed(cfg.seed, 3 * i);
    c.corollary2 = corollary2_experiment(c.x01, c.x02, c.q, run);

    const double side = c.q > 0.0 ? 1.0 : -1.0;
    run.seed = mix_seed(cfg.seed, 3 * i + 1);
    c.remark1 = remark1_experiment(side * std::abs(c.x01), side * std::abs(c.x02), side, run);

    run.seed = mix_seed(cfg.seed, 3 * i + 2);
    c.remark2 = remark2_experiment(c.x01, c.x02, run);
    out.push_back(c);
  }
  return out;
}

}  // namespace skewdiff
