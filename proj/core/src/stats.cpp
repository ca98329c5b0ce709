#include "skewdiff/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skewdiff {

double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

McSummary mc_summary(std::span<const double> samples, double ci_multiplier) {
  if (samples.size() < 2) {
    throw std::invalid_argument("mc_summary needs at least two samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  const double mean = compensated_sum(sorted) / m;

  std::vector<double> sq(sorted.size());
  std::transform(sorted.begin(), sorted.end(), sq.begin(), [mean](double v) {
    const double d = v - mean;
    return d * d;
  });
  std::sort(sq.begin(), sq.end());
  const double variance = compensated_sum(sq) / (m - 1.0);

  McSummary out;
  out.count = sorted.size();
  out.mean = mean;
  out.std_error = std::sqrt(variance / m);
  out.ci_multiplier = ci_multiplier;
  return out;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::invalid_argument("empirical CDF needs samples");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::left(double x) const {
  const auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& sample, const CdfFunction& cdf,
                   const CdfFunction& cdf_left) {
  const auto values = sample.sorted();
  const double m = static_cast<double>(values.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double x = values[i];
    const double model_right = cdf(x);
    const double model_left = cdf_left ? cdf_left(x) : model_right;
    const double emp_left = static_cast<double>(i) / m;
    const double emp_right = static_cast<double>(j) / m;
    worst = std::max({worst, std::abs(emp_right - model_right),
                      std::abs(emp_left - model_left)});
    i = j;
  }
  return std::min(worst, 1.0);
}

double ks_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  const auto xs = a.sorted();
  const auto ys = b.sorted();
  const double ma = static_cast<double>(xs.size());
  const double mb = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double worst = 0.0;
  // Merge walk: after consuming every copy of the next smallest value, both
  // step functions are evaluated at that value.
  while (i < xs.size() || j < ys.size()) {
    double x;
    if (j == ys.size() || (i < xs.size() && xs[i] <= ys[j])) {
      x = xs[i];
    } else {
      x = ys[j];
    }
    while (i < xs.size() && xs[i] == x) ++i;
    while (j < ys.size() && ys[j] == x) ++j;
    worst = std::max(worst, std::abs(static_cast<double>(i) / ma -
                                     static_cast<double>(j) / mb));
  }
  return worst;
}

double ks_critical_1pct(std::size_t m) {
  return 1.63 / std::sqrt(static_cast<double>(m));
}

bool monotone_trend(std::span<const TrendPoint> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("monotone_trend needs at least three points");
  }
  double lowest_upper = std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    if (p.value - p.half_width > lowest_upper) return false;
    lowest_upper = std::min(lowest_upper, p.value + p.half_width);
  }
  const auto& first = points.front();
  const auto& last = points.back();
  return last.value + last.half_width < first.value - first.half_width;
}

}  // namespace skewdiff
