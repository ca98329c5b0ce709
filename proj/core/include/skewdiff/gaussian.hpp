#pragma once

namespace skewdiff {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// Standard normal density.
double gaussian_density(double z);

/// P{N(0,1) > z}, evaluated through the complementary error function.
double gaussian_tail(double z);

/// Inverse of gaussian_tail on (0, 1): returns z with gaussian_tail(z) = p.
/// Safeguarded Newton iteration inside a bisection bracket, tolerance 1e-12.
double inverse_gaussian_tail(double p);

}  // namespace skewdiff
