#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "skewdiff/grid.hpp"
#include "skewdiff/wiener.hpp"

namespace skewdiff {

struct SbmParams {
  double q = 0.0;                ///< skewing parameter, |q| <= 1
  double x0 = 0.0;               ///< start point
  std::size_t mollifier_n = 256; ///< drift scale n

  /// Throws std::invalid_argument when |q| > 1 or n == 0.
  void validate() const;
};

/// Gaussian drift bump a(x) = mass/sqrt(2π) exp(-x²/2), rescaled as
/// a_n(x) = n a(n x). Its integral is `mass` for every n.
struct MollifiedDrift {
  double mass = 0.0;
  std::size_t scale = 1;

  /// Unscaled profile a(x).
  double profile(double x) const;
  /// a_n(x) = n a(n x).
  double operator()(double x) const;
  /// A(x) = ∫_{-∞}^x a(z) dz.
  double cumulative(double x) const;
  /// Lipschitz constant of the unscaled profile: |mass| e^{-1/2} / sqrt(2π).
  double lipschitz() const;

  /// Bump whose limit process has skew q (mass = artanh q).
  static MollifiedDrift for_skew(double q, std::size_t n);
};

/// Joint (x, η) path on the grid of its driver.
struct SbmPath {
  TimeGrid grid;
  double q = 0.0;
  double x0 = 0.0;
  std::vector<double> x;
  std::vector<double> eta;
  std::shared_ptr<const WienerPath> driver;
  /// Largest correction applied by the monotone envelope (Tanaka route only).
  double clamp = 0.0;

  /// max_k |x[k] - x0 - q eta[k] - w[k]|.
  double identity_residual() const;
};

/// A = artanh(q). Throws std::domain_error for |q| >= 1.
double skew_to_mass(double q);

double eval_mollified_drift(const MollifiedDrift& d, double x);

/// Drift-eliminating scale function S_n(x) = c ∫_0^x exp{-2(A(nu) - A(0))} du,
/// c = exp{-2A(0)} / (1 + exp{-2A}).
double s_transform(const MollifiedDrift& d, double x);
/// S_n'(x).
double s_derivative(const MollifiedDrift& d, double x);
/// Inverse of s_transform; throws NumericFailure if the solve stalls.
double s_inverse(const MollifiedDrift& d, double y);
/// σ_n(y) = S_n'(S_n^{-1}(y)).
double sigma_n(const MollifiedDrift& d, double y);

/// Limit diffusion coefficient (1 - q sign y)/2 with sign(0) = 0.
double limit_sigma(double q, double y);
/// Limit of S_n: x (1 - q sign x)/2.
double space_map(double q, double x);
/// 2y / (1 - q sign y).
double space_map_inverse(double q, double y);

/// Euler scheme for x_n(t) = x0 + ∫ a_n(x_n) dτ + w(t). For q != 0 the local
/// time is the accumulated drift divided by q, which makes
/// x = x0 + q η + w hold node by node; for q = 0 the path is x0 + w and the
/// local time comes from the Tanaka estimator. The bump is evaluated as zero
/// for |n x| >= 8.
SbmPath simulate_sbm_mollified(const SbmParams& p,
                               std::shared_ptr<const WienerPath> w);

/// Discrete Skorokhod reflection of x0 + w at zero, q = +1 keeps x >= 0 and
/// q = -1 keeps x <= 0.
SbmPath simulate_reflected(double x0, double q,
                           std::shared_ptr<const WienerPath> w);

/// Routes by |q|: reflected for |q| = 1, mollified otherwise.
SbmPath simulate_sbm(const SbmParams& p, std::shared_ptr<const WienerPath> w);

struct TanakaEstimate {
  std::vector<double> eta;
  double clamp = 0.0;  ///< max_k (eta[k] - raw[k])
};

/// eta[k] = |x[k]| - |x[0]| - Σ_{j<k} sign(x[j]) Δw[j], replaced by its
/// running maximum so it is nondecreasing.
TanakaEstimate tanaka_local_time(std::span<const double> x_path,
                                 const WienerPath& w);

/// Euler scheme for dy = σ(y) dw in the transformed coordinate, mapped back by
/// space_map_inverse. Independent route to the skew Brownian law.
struct TransformedPath {
  TimeGrid grid;
  std::vector<double> y;
  std::vector<double> x;
};
TransformedPath simulate_sbm_transformed(double q, double x0, const WienerPath& w);

/// Law of the local time at zero at time t for a start point x.
struct LocalTimeLaw {
  double x = 0.0;
  double t = 1.0;
};

/// P{η_t < a} = (1 - 2 Φ̄((|x| + a)/sqrt t)) for a > 0, 0 for a <= 0.
double local_time_cdf(const LocalTimeLaw& law, double a);
/// P{η_t <= a}: equals local_time_cdf except for the atom at a = 0.
double local_time_cdf_right(const LocalTimeLaw& law, double a);
/// P{η_t = 0} = 1 - 2 Φ̄(|x|/sqrt t).
double local_time_atom(const LocalTimeLaw& law);
/// Inverse-transform sample; resolves the atom first.
double sample_local_time(const LocalTimeLaw& law, RandomStream& stream);

/// I_t(x) = ∫_0^t (2πτ)^{-1/2} exp{-x²/(2τ)} dτ, i.e. E_x η_t.
double expected_local_time(double x, double t);

}  // namespace skewdiff
