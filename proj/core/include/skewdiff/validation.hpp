#pragma once

#include <cstddef>
#include <cstdint>

#include "skewdiff/experiment.hpp"
#include "skewdiff/sbm.hpp"

namespace skewdiff {

/// Quadratic variation of y = space_map(q, x) along mollified paths against
/// ∫ limit_sigma(q, y)² dt. Both sums are pooled over paths.
struct QuadraticVariationReport {
  double realized = 0.0;         ///< Σ_paths Σ_k (Δy_k)²
  double predicted = 0.0;        ///< Σ_paths Σ_k σ(y_k)² dt
  double ratio = 0.0;            ///< realized / predicted
  double reverse_ratio = 0.0;    ///< same test with y = space_map_inverse(q, x)
  double tolerance = 0.10;
  bool pass = false;             ///< |ratio - 1| <= tolerance
};

QuadraticVariationReport quadratic_variation_check(double q, double x0, const McConfig& cfg,
                                                   double tolerance = 0.10);

/// Two-sample KS distance between terminal values of the mollified scheme and
/// the transformed-diffusion Euler scheme, both driven by the same noise.
struct CrossSchemeReport {
  double ks = 0.0;
  double threshold = 0.03;
  bool pass = false;
};

CrossSchemeReport cross_scheme_check(double q, double x0, const McConfig& cfg,
                                     double threshold = 0.03);

/// Exact η sampler against the closed-form CDF.
struct EtaSamplerReport {
  double ks = 0.0;               ///< full law, atom included
  double ks_positive = 0.0;      ///< continuous part, conditioned on η > 0
  double threshold = 0.0;        ///< 1.63 / sqrt(M)
  double threshold_positive = 0.0;
  McSummary zero_fraction;
  double atom = 0.0;
  McSummary mean;
  double mean_target = 0.0;
  bool pass = false;             ///< ks <= threshold and ks_positive <= its threshold
};

EtaSamplerReport eta_sampler_check(const LocalTimeLaw& law, std::size_t samples,
                                   std::uint64_t seed);

/// Terminal local time of a simulated scheme (mollified for |q| < 1, Tanaka
/// for q = 0, Skorokhod for |q| = 1) against the exact law.
struct SchemeLawReport {
  TargetCheck mean;
  double ks = 0.0;
  double ks_threshold = 0.05;
  bool pass = false;
};

SchemeLawReport scheme_law_check(double q, double x0, const McConfig& cfg,
                                 double ks_threshold = 0.05);

}  // namespace skewdiff
