#pragma once

#include <functional>

namespace skewdiff {

/// Adaptive Gauss-Kronrod quadrature of f over [a, b].
///
/// Throws NumericFailure when the error estimate stays above
/// rel_tol * ∫|f| after the maximum refinement depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

}  // namespace skewdiff
