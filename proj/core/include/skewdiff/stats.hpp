#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace skewdiff {

/// Default CI multiplier: half-width = 3 standard errors.
inline constexpr double kCiMultiplier = 3.0;

struct McSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double ci_multiplier = kCiMultiplier;

  double half_width() const { return ci_multiplier * std_error; }
  double lower() const { return mean - half_width(); }
  double upper() const { return mean + half_width(); }
};

/// Mean, standard error (sample std / sqrt(M)) and CI half-width.
///
/// Values are summed in sorted order with Neumaier compensation, so the
/// summary is invariant under permutation of the input. Needs >= 2 samples.
McSummary mc_summary(std::span<const double> samples,
                     double ci_multiplier = kCiMultiplier);

/// Right-continuous empirical distribution function of a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);

  std::size_t size() const { return sorted_.size(); }
  std::span<const double> sorted() const { return sorted_; }

  /// Fraction of samples <= x.
  double operator()(double x) const;
  /// Fraction of samples < x.
  double left(double x) const;

 private:
  std::vector<double> sorted_;
};

using CdfFunction = std::function<double(double)>;

/// Sup-distance between an empirical CDF and a model CDF.
///
/// `cdf` is the right-continuous P{X <= x}; `cdf_left` is P{X < x} and only
/// needs to differ from `cdf` at atoms. Both one-sided gaps are checked at
/// every distinct sample value.
double ks_distance(const EmpiricalCdf& sample, const CdfFunction& cdf,
                   const CdfFunction& cdf_left = {});

/// Two-sample sup-distance.
double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

/// One-sample KS critical value at the 1% level: 1.63 / sqrt(M).
double ks_critical_1pct(std::size_t m);

struct TrendPoint {
  double value = 0.0;
  double half_width = 0.0;
};

/// Nonincreasing-with-strict-drop test.
///
/// Passes iff every later interval reaches down to or below every earlier one
/// (value_j - hw_j <= value_i + hw_i for i < j) and the last interval lies
/// strictly below the first (value_last + hw_last < value_first - hw_first).
/// Needs at least three points.
bool monotone_trend(std::span<const TrendPoint> points);

/// Neumaier-compensated sum in the given order.
double compensated_sum(std::span<const double> values);

}  // namespace skewdiff
