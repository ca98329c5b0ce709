#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skewdiff {

/// Interface coefficients on S, in basis coordinates s ∈ R^m, m = d - 1.
class CoefficientField {
 public:
  virtual ~CoefficientField() = default;
  virtual std::size_t tangent_dim() const = 0;
  /// α(s) into out[0..m).
  virtual void alpha(std::span<const double> s, std::span<double> out) const = 0;
  /// β̃(s) into out[0..m*m), row-major.
  virtual void beta_tilde(std::span<const double> s, std::span<double> out) const = 0;
};

struct GdiffCoefficients {
  std::shared_ptr<const CoefficientField> field;
  double bound_k = 1.0;  ///< K in sup(|α| + ‖β̃‖) <= K and the Lipschitz condition
  double q = 0.0;
  std::string profile;

  std::size_t tangent_dim() const { return field->tangent_dim(); }
  Eigen::VectorXd alpha(const Eigen::VectorXd& s) const;
  Eigen::MatrixXd beta_tilde(const Eigen::VectorXd& s) const;
};

struct ProfileParams {
  double alpha = 0.0;      ///< drift amplitude
  double beta = 0.0;       ///< diffusion amplitude, >= 0
  double frequency = 1.0;  ///< spatial frequency of the sinusoidal parts
};

/// Registry: "zero", "constant", "sinusoidal", "mixed". K is set from the
/// analytic sup and Lipschitz bounds of the profile. Throws
/// std::invalid_argument for an unknown name or a dimension below 2.
GdiffCoefficients make_profile(std::string_view name, std::size_t dim,
                               const ProfileParams& params, double q);

std::vector<std::string> profile_names();

struct CoefficientReport {
  double sup_value = 0.0;       ///< max over probes of |α| + ‖β̃‖_F
  double max_quotient = 0.0;    ///< max over probe pairs of (|Δα|² + ‖Δβ̃‖²_F)/|Δs|²
  std::size_t pairs_checked = 0;
  bool pass = false;            ///< both maxima <= K
};

/// Checks the boundedness and Lipschitz conditions on a probe set. Pairs are
/// scanned in lexicographic order up to `max_pairs`. Throws
/// InvalidCoefficient if β̃ is asymmetric or has a negative eigenvalue.
CoefficientReport validate_coefficients(const GdiffCoefficients& c,
                                        std::span<const Eigen::VectorXd> probes,
                                        std::size_t max_pairs = 1'000'000);

/// Half Kronecker-lattice points, half uniform random points, in [-radius, radius]^m.
std::vector<Eigen::VectorXd> make_probe_set(std::size_t m, std::size_t count,
                                            std::uint64_t seed, double radius = 3.0);

}  // namespace skewdiff
