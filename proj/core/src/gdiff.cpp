#include "skewdiff/gdiff.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skewdiff/errors.hpp"
#include "skewdiff/parallel.hpp"

namespace skewdiff {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// w̃ as a function of the level: exact Brownian values on the lattice
// j * kLevelCell, Brownian bridges in between, sampled in increasing order.
// Lattice increments of cell j sit at addresses j * blocks + b; bridge draws of
// cell j at kBridgeBase | j << 20 | counter.
class LevelNoise {
 public:
  LevelNoise(const RandomStream& stream, std::size_t m)
      : stream_(stream), m_(m), blocks_((m + 1) / 2), left_(m, 0.0), right_(m), value_(m, 0.0),
        z_(2 * blocks_) {
    draw(cell_ * blocks_);
    for (std::size_t i = 0; i < m_; ++i) right_[i] = std::sqrt(kLevelCell) * z_[i];
  }

  // Writes w̃(level) into out; levels must not decrease between calls.
  void value_at(double level, std::span<double> out) {
    while (level >= static_cast<double>(cell_ + 1) * kLevelCell) {
      ++cell_;
      left_ = right_;
      draw(cell_ * blocks_);
      for (std::size_t i = 0; i < m_; ++i) right_[i] = left_[i] + std::sqrt(kLevelCell) * z_[i];
      value_ = left_;
      at_ = static_cast<double>(cell_) * kLevelCell;
      queries_ = 0;
    }
    if (level > at_) {
      const double end = static_cast<double>(cell_ + 1) * kLevelCell;
      const double frac = (level - at_) / (end - at_);
      const double sd = std::sqrt((level - at_) * (end - level) / (end - at_));
      if (queries_ * blocks_ >= (std::uint64_t{1} << 20)) {
        throw NumericFailure("too many local-time queries inside one level cell");
      }
      draw(kBridgeBase | (cell_ << 20) | (queries_ * blocks_));
      ++queries_;
      for (std::size_t i = 0; i < m_; ++i) {
        value_[i] += frac * (right_[i] - value_[i]) + sd * z_[i];
      }
      at_ = level;
    }
    std::copy(value_.begin(), value_.end(), out.begin());
  }

 private:
  static constexpr std::uint64_t kBridgeBase = std::uint64_t{1} << 62;

  void draw(std::uint64_t address) {
    for (std::size_t b = 0; b < blocks_; ++b) {
      const auto pair = stream_.normal_pair_at(address + b);
      z_[2 * b] = pair[0];
      z_[2 * b + 1] = pair[1];
    }
  }

  const RandomStream& stream_;
  std::size_t m_;
  std::size_t blocks_;
  std::uint64_t cell_ = 0;
  std::uint64_t queries_ = 0;
  double at_ = 0.0;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<double> value_;
  std::vector<double> z_;
};

}  // namespace

Eigen::VectorXd GdiffPath::tangent_at(std::size_t k) const {
  const std::size_t m = tangent_dim();
  return Eigen::Map<const Eigen::VectorXd>(tangent.data() + k * m, idx(m));
}

Eigen::VectorXd GdiffPath::x(std::size_t k) const {
  return frame.assemble(normal.x[k], tangent_at(k));
}

GdiffPath simulate_gdiff(const GdiffCoefficients& c, const Eigen::VectorXd& x0,
                         const HyperplaneFrame& frame,
                         std::shared_ptr<const WienerPath> w,
                         const RandomStream& wtilde, std::size_t mollifier_n) {
  if (!w) throw std::invalid_argument("missing driver");
  if (!c.field) throw std::invalid_argument("missing coefficient field");
  const std::size_t d = frame.dim();
  const std::size_t m = frame.tangent_dim();
  if (w->dims() != d) throw std::invalid_argument("driver dimension differs from the frame");
  if (static_cast<std::size_t>(x0.size()) != d) throw std::invalid_argument("start point dimension differs from the frame");
  if (c.tangent_dim() != m) throw std::invalid_argument("coefficient dimension differs from the frame");

  auto normal_w = std::make_shared<const WienerPath>(normal_driver(*w, frame));
  SbmPath normal = simulate_sbm(SbmParams{c.q, frame.normal(x0), mollifier_n}, normal_w);

  const TimeGrid& grid = w->grid();
  const std::size_t steps = grid.steps();
  std::vector<double> tangent((steps + 1) * m);
  std::vector<double> xi(steps * m, 0.0);
  std::vector<double> noise(steps * m, 0.0);

  // Bᵀ as m × d row-major for the tangential driver increments.
  const Eigen::MatrixXd& basis = frame.basis();
  std::vector<double> basis_t(m * d);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < d; ++j) basis_t[i * d + j] = basis(idx(j), idx(i));
  }
  const Eigen::VectorXd s0 = frame.tangent(x0);
  std::copy(s0.data(), s0.data() + m, tangent.begin());

  std::vector<double> alpha(m);
  std::vector<double> beta(m * m);
  std::vector<double> level_before(m, 0.0);
  std::vector<double> level_after(m);
  LevelNoise wtilde_path(wtilde, m);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::span<const double> s(tangent.data() + k * m, m);
    double* next = tangent.data() + (k + 1) * m;
    const auto w_now = w->node(k);
    const auto w_next = w->node(k + 1);
    for (std::size_t i = 0; i < m; ++i) {
      double dw = 0.0;
      for (std::size_t j = 0; j < d; ++j) dw += basis_t[i * d + j] * (w_next[j] - w_now[j]);
      next[i] = s[i] + dw;
    }
    const double deta = normal.eta[k + 1] - normal.eta[k];
    if (deta <= 0.0) continue;

    c.field->alpha(s, alpha);
    c.field->beta_tilde(s, beta);
    wtilde_path.value_at(normal.eta[k + 1], level_after);
    double* xi_k = xi.data() + k * m;
    double* noise_k = noise.data() + k * m;
    for (std::size_t i = 0; i < m; ++i) xi_k[i] = level_after[i] - level_before[i];
    level_before.swap(level_after);
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < m; ++j) acc += beta[i * m + j] * xi_k[j];
      noise_k[i] = acc;
      next[i] += alpha[i] * deta + acc;
    }
  }
  return GdiffPath{frame, c, x0, std::move(normal), std::move(tangent), std::move(xi),
                   std::move(noise), std::move(w)};
}

std::optional<std::size_t> inverse_local_time_index(std::span<const double> eta,
                                                    double level) {
  if (level < 0.0) throw std::invalid_argument("inverse local time needs a nonnegative level");
  // eta is nondecreasing, so the first node at or above the level is a
  // lower_bound.
  const auto it = std::lower_bound(eta.begin(), eta.end(), level);
  if (it == eta.end()) return std::nullopt;
  return static_cast<std::size_t>(it - eta.begin());
}

std::optional<double> inverse_local_time(const TimeGrid& grid, std::span<const double> eta,
                                         double level) {
  if (eta.size() != grid.node_count()) throw std::invalid_argument("eta length differs from grid");
  const auto k = inverse_local_time_index(eta, level);
  if (!k) return std::nullopt;
  return grid.time(*k);
}

std::optional<double> inverse_local_time(const SbmPath& path, double level) {
  return inverse_local_time(path.grid, path.eta, level);
}

std::optional<double> inverse_local_time(const GdiffPath& path, double level) {
  return inverse_local_time(path.grid(), path.eta(), level);
}

TimeChangedSample time_changed_path(const GdiffPath& path, std::span<const double> levels) {
  const std::size_t m = path.tangent_dim();
  const std::size_t d = path.frame.dim();
  const double q = path.coefficients.q;
  TimeChangedSample out;

  // prefix[k] = Σ_{j<k} β̃ ξ_j
  const std::size_t nodes = path.grid().node_count();
  std::vector<double> prefix(nodes * m, 0.0);
  for (std::size_t k = 1; k < nodes; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      prefix[k * m + i] = prefix[(k - 1) * m + i] + path.interface_noise[(k - 1) * m + i];
    }
  }

  Eigen::VectorXd drift = Eigen::VectorXd::Zero(idx(m));
  double prev_level = 0.0;
  std::size_t prev_k = 0;
  for (double level : levels) {
    if (level < prev_level) throw std::invalid_argument("levels must be nondecreasing and nonnegative");
    const auto k = inverse_local_time_index(path.eta(), level);
    if (!k) {
      out.truncated = true;
      break;
    }
    drift += path.coefficients.alpha(path.tangent_at(prev_k)) * (level - prev_level);
    prev_level = level;
    prev_k = *k;

    const Eigen::VectorXd noise_sum = Eigen::Map<const Eigen::VectorXd>(prefix.data() + *k * m, idx(m));
    Eigen::VectorXd w_at(idx(d));
    for (std::size_t i = 0; i < d; ++i) w_at(idx(i)) = path.driver->at(*k, i);
    const Eigen::VectorXd expected = path.x0 + q * level * path.frame.nu() +
                                     path.frame.basis() * (drift + noise_sum) + w_at;
    const Eigen::VectorXd x = path.x(*k);

    out.levels.push_back(level);
    out.times.push_back(path.grid().time(*k));
    out.residual.push_back((x - expected).norm());
    out.x.push_back(x);
  }
  return out;
}

std::vector<McSummary> continuity_experiment(const GdiffCoefficients& c,
                                             const HyperplaneFrame& frame,
                                             const Eigen::VectorXd& x,
                                             std::span<const Eigen::VectorXd> offsets,
                                             double epsilon, const McConfig& cfg) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("continuity experiment needs epsilon > 0");
  if (cfg.paths < 2) throw std::invalid_argument("experiment needs at least two paths");
  const TimeGrid grid = make_grid(cfg.horizon, cfg.steps);
  const auto per_path = parallel_map(cfg.paths, cfg.workers, [&](std::size_t p) {
    auto stream = path_stream(cfg.seed, p, 0);
    auto w = std::make_shared<const WienerPath>(sample_wiener(grid, frame.dim(), stream));
    const auto wtilde = path_stream(cfg.seed, p, 1);
    const Eigen::VectorXd base = simulate_gdiff(c, x, frame, w, wtilde, cfg.mollifier_n).terminal();
    std::vector<double> hits(offsets.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const Eigen::VectorXd moved =
          simulate_gdiff(c, x + offsets[i], frame, w, wtilde, cfg.mollifier_n).terminal();
      hits[i] = (moved - base).norm() > epsilon ? 1.0 : 0.0;
    }
    return hits;
  });
  std::vector<McSummary> out;
  out.reserve(offsets.size());
  std::vector<double> column(cfg.paths);
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    for (std::size_t p = 0; p < cfg.paths; ++p) column[p] = per_path[p][i];
    out.push_back(mc_summary(column));
  }
  return out;
}

bool TangentialMomentReport::pass() const {
  return std::all_of(coordinates.begin(), coordinates.end(),
                     [](const TargetCheck& t) { return t.pass; });
}

TangentialMomentReport tangential_moment_experiment(const GdiffCoefficients& c,
                                                    const HyperplaneFrame& frame,
                                                    const Eigen::VectorXd& x0,
                                                    const McConfig& cfg, double allowance) {
  if (cfg.paths < 2) throw std::invalid_argument("experiment needs at least two paths");
  const TimeGrid grid = make_grid(cfg.horizon, cfg.steps);
  const std::size_t m = frame.tangent_dim();
  const auto per_path = parallel_map(cfg.paths, cfg.workers, [&](std::size_t p) {
    auto stream = path_stream(cfg.seed, p, 0);
    auto w = std::make_shared<const WienerPath>(sample_wiener(grid, frame.dim(), stream));
    const auto path = simulate_gdiff(c, x0, frame, w, path_stream(cfg.seed, p, 1), cfg.mollifier_n);
    const Eigen::VectorXd shift = path.tangent_at(grid.steps()) - path.tangent_at(0);
    return std::vector<double>(shift.data(), shift.data() + m);
  });
  const Eigen::MatrixXd beta = c.beta_tilde(frame.tangent(x0));
  const double mean_eta = expected_local_time(frame.normal(x0), cfg.horizon);
  TangentialMomentReport report;
  std::vector<double> column(cfg.paths);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < cfg.paths; ++p) column[p] = per_path[p][i] * per_path[p][i];
    const double target = cfg.horizon + beta.row(idx(i)).squaredNorm() * mean_eta;
    report.coordinates.push_back(check_target(mc_summary(column), target, allowance));
  }
  return report;
}

double rho_tail_bound(double x_normal, double horizon_t, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("rho tail bound needs N > 0");
  return 2.0 * (std::abs(x_normal) + horizon_t) / std::sqrt(2.0 * std::numbers::pi * n);
}

namespace {

double rho_at_least(const SbmPath& path, double level, double n) {
  if (path.grid.horizon() < n * (1.0 - 1e-12)) {
    throw std::invalid_argument("paths must cover [0, N] for the rho tail check");
  }
  const auto rho = inverse_local_time(path, level);
  return (!rho || *rho >= n) ? 1.0 : 0.0;
}

}  // namespace

RhoTailReport rho_tail_check(std::span<const SbmPath> ensemble, double level, double n,
                             double x_normal, double horizon_t) {
  std::vector<double> hits;
  hits.reserve(ensemble.size());
  for (const auto& path : ensemble) hits.push_back(rho_at_least(path, level, n));
  RhoTailReport r{level, n, rho_tail_bound(x_normal, horizon_t, n), mc_summary(hits), false};
  r.pass = r.frequency.lower() <= r.bound;
  return r;
}

RhoTailReport rho_tail_experiment(double q, double x_normal, double level,
                                  double horizon_t, double n, const McConfig& cfg) {
  if (cfg.paths < 2) throw std::invalid_argument("experiment needs at least two paths");
  if (level < 0.0) throw std::invalid_argument("inverse local time needs a nonnegative level");
  const TimeGrid grid = make_grid(n, cfg.steps);
  const SbmParams params{q, x_normal, cfg.mollifier_n};
  params.validate();
  const auto hits = parallel_map(cfg.paths, cfg.workers, [&](std::size_t p) {
    auto stream = path_stream(cfg.seed, p, 0);
    auto w = std::make_shared<const WienerPath>(sample_wiener(grid, 1, stream));
    return rho_at_least(simulate_sbm(params, w), level, n);
  });
  RhoTailReport r{level, n, rho_tail_bound(x_normal, horizon_t, n), mc_summary(hits), false};
  r.pass = r.frequency.lower() <= r.bound;
  return r;
}

double small_local_time_bound(double t, double a) {
  return a * std::numbers::sqrt2 / std::sqrt(std::numbers::pi * t);
}

SmallLocalTimeReport small_local_time_check(double x_normal, double t, double a, double q,
                                            const McConfig& cfg) {
  if (x_normal != 0.0) throw std::invalid_argument("small local time check needs a start on the interface");
  if (!(t > 0.0) || !(a > 0.0)) throw std::invalid_argument("small local time check needs t > 0 and a > 0");
  SmallLocalTimeReport r;
  r.exact = local_time_cdf(LocalTimeLaw{x_normal, t}, a);
  r.bound = small_local_time_bound(t, a);
  r.exact_ok = r.exact <= r.bound;
  r.pass = r.exact_ok;
  if (cfg.paths == 0) return r;

  const TimeGrid grid = make_grid(t, cfg.steps);
  const SbmParams params{q, x_normal, cfg.mollifier_n};
  params.validate();
  const auto hits = parallel_map(cfg.paths, cfg.workers, [&](std::size_t p) {
    auto stream = path_stream(cfg.seed, p, 0);
    auto w = std::make_shared<const WienerPath>(sample_wiener(grid, 1, stream));
    return simulate_sbm(params, w).eta.back() < a ? 1.0 : 0.0;
  });
  r.frequency = mc_summary(hits);
  r.pass = r.exact_ok && r.frequency->lower() <= r.bound;
  return r;
}

}  // namespace skewdiff
