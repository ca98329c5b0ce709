#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "skewdiff/coefficients.hpp"
#include "skewdiff/experiment.hpp"
#include "skewdiff/frame.hpp"
#include "skewdiff/sbm.hpp"

namespace skewdiff {

/// Joint path of the interface diffusion: normal coordinate is a skew
/// Brownian motion on w·ν, tangential coordinates move by α dη, β̃ dw̃(η) and
/// the tangential part of w.
struct GdiffPath {
  HyperplaneFrame frame;
  GdiffCoefficients coefficients;
  Eigen::VectorXd x0;
  SbmPath normal;                          ///< x·ν and η
  std::vector<double> tangent;             ///< (steps+1) × m basis coordinates
  std::vector<double> xi;                  ///< steps × m, w̃(η_{k+1}) - w̃(η_k)
  std::vector<double> interface_noise;     ///< steps × m, β̃(x^S_k) ξ_k
  std::shared_ptr<const WienerPath> driver;

  const TimeGrid& grid() const { return normal.grid; }
  std::span<const double> eta() const { return normal.eta; }
  std::size_t tangent_dim() const { return frame.tangent_dim(); }
  Eigen::VectorXd tangent_at(std::size_t k) const;
  Eigen::VectorXd x(std::size_t k) const;
  Eigen::VectorXd terminal() const { return x(normal.x.size() - 1); }
};

/// Spacing of the level lattice on which w̃ is sampled.
inline constexpr double kLevelCell = 1e-4;

/// Splitting scheme, per step: the normal coordinate advances by the skew
/// Brownian scheme on w·ν, giving Δη; then
/// s_{k+1} = s_k + α(s_k) Δη + β̃(s_k) ξ_k + Bᵀ Δw_k with
/// ξ_k = w̃(η_{k+1}) - w̃(η_k), so ξ_k ~ N(0, Δη I) given η.
/// w̃ is a function of the level drawn from `wtilde` (lattice values plus
/// Brownian bridges), so two paths sharing `wtilde` see the same w̃ even when
/// their local times grow on different steps.
GdiffPath simulate_gdiff(const GdiffCoefficients& c, const Eigen::VectorXd& x0,
                         const HyperplaneFrame& frame,
                         std::shared_ptr<const WienerPath> w,
                         const RandomStream& wtilde, std::size_t mollifier_n = 256);

/// Smallest node index with eta >= level; nullopt if never reached.
std::optional<std::size_t> inverse_local_time_index(std::span<const double> eta,
                                                    double level);
/// ρ_level = inf{s : η_s >= level} on the grid.
std::optional<double> inverse_local_time(const TimeGrid& grid,
                                         std::span<const double> eta, double level);
std::optional<double> inverse_local_time(const SbmPath& path, double level);
std::optional<double> inverse_local_time(const GdiffPath& path, double level);

struct TimeChangedSample {
  std::vector<double> levels;
  std::vector<double> times;              ///< ρ at each reached level
  std::vector<Eigen::VectorXd> x;         ///< x(ρ_level)
  std::vector<double> residual;           ///< norm of the time-changed identity residual
  bool truncated = false;                 ///< a level was never reached
};

/// Samples x(ρ_u) for nondecreasing levels u and checks
/// x(ρ_u) = x0 + ∫_0^u (qν + α(x^S(ρ_v))) dv + Σ β̃ dw̃ + w(ρ_u),
/// where the dv-integral is a left Riemann sum over the levels.
TimeChangedSample time_changed_path(const GdiffPath& path, std::span<const double> levels);

/// Shared-noise estimates of P{|x_δ(t) - x(t)| > ε} for each offset δ.
std::vector<McSummary> continuity_experiment(const GdiffCoefficients& c,
                                             const HyperplaneFrame& frame,
                                             const Eigen::VectorXd& x,
                                             std::span<const Eigen::VectorXd> offsets,
                                             double epsilon, const McConfig& cfg);

/// E|s_i(T) - s_i(0)|² per tangential coordinate, with the target
/// T + Σ_j (β̃²)_{ij}·I_T(x·ν) valid for constant coefficients and α = 0.
struct TangentialMomentReport {
  std::vector<TargetCheck> coordinates;
  bool pass() const;
};
TangentialMomentReport tangential_moment_experiment(const GdiffCoefficients& c,
                                                    const HyperplaneFrame& frame,
                                                    const Eigen::VectorXd& x0,
                                                    const McConfig& cfg,
                                                    double allowance = kSchemeAllowance);

/// 2(|x·ν| + T)/sqrt(2πN).
double rho_tail_bound(double x_normal, double horizon_t, double n);

struct RhoTailReport {
  double level = 0.0;
  double n = 0.0;
  double bound = 0.0;
  McSummary frequency;  ///< fraction of paths with ρ_level >= N
  bool pass = false;    ///< frequency lower CI edge <= bound
};

/// Paths must cover [0, N]; a level never reached counts as ρ >= N.
RhoTailReport rho_tail_check(std::span<const SbmPath> ensemble, double level, double n,
                             double x_normal, double horizon_t);
/// Simulates the normal skew Brownian motion on [0, N] and runs rho_tail_check.
/// cfg.horizon is replaced by N.
RhoTailReport rho_tail_experiment(double q, double x_normal, double level,
                                  double horizon_t, double n, const McConfig& cfg);

/// a sqrt(2)/sqrt(πt).
double small_local_time_bound(double t, double a);

struct SmallLocalTimeReport {
  double exact = 0.0;                  ///< P{η_t < a} from the exact law
  double bound = 0.0;
  std::optional<McSummary> frequency;  ///< simulated P{η_t < a}
  bool exact_ok = false;
  bool pass = false;
};

/// Start must lie on the interface (x_normal = 0). cfg.paths == 0 skips the
/// simulated side; cfg.horizon is replaced by t.
SmallLocalTimeReport small_local_time_check(double x_normal, double t, double a, double q,
                                            const McConfig& cfg);

}  // namespace skewdiff
