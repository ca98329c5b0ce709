#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "skewdiff/rng.hpp"
#include "skewdiff/stats.hpp"

using namespace skewdiff;

namespace {

// Exhaustive reference for monotone_trend.
bool pairwise_trend(const std::vector<TrendPoint>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (pts[j].value - pts[j].half_width > pts[i].value + pts[i].half_width) return false;
    }
  }
  return pts.back().value + pts.back().half_width < pts.front().value - pts.front().half_width;
}

std::vector<double> uniforms(std::uint64_t seed, std::size_t n) {
  auto s = derive_stream(seed, 0);
  std::vector<double> v(n);
  for (auto& x : v) x = s.uniform();
  return v;
}

}  // namespace

TEST_SUITE("mc_summary") {
  TEST_CASE("constant samples") {
    const std::vector<double> v(10, 2.5);
    const auto s = mc_summary(v);
    CHECK(s.mean == 2.5);
    CHECK(s.std_error == 0.0);
    CHECK(s.half_width() == 0.0);
  }

  TEST_CASE("Bernoulli(1/2)") {
    auto s = derive_stream(5, 0);
    std::vector<double> v(100000);
    for (auto& x : v) x = s.uniform() < 0.5 ? 1.0 : 0.0;
    const auto m = mc_summary(v);
    CHECK(std::abs(m.mean - 0.5) <= 4.0 * m.std_error);
    CHECK(m.std_error == doctest::Approx(0.5 / std::sqrt(100000.0)).epsilon(0.01));
  }

  TEST_CASE("fewer than two samples") {
    CHECK_THROWS_AS(mc_summary(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(mc_summary(std::vector<double>{1.0}), std::invalid_argument);
  }

  TEST_CASE("permutation invariance") {
    auto v = uniforms(8, 5000);
    for (auto& x : v) x = 1e8 * x - 3e7;
    const auto ref = mc_summary(v);
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(v.begin(), v.end(), gen);
      const auto s = mc_summary(v);
      REQUIRE(s.mean == ref.mean);
      REQUIRE(s.std_error == ref.std_error);
    }
  }
}

TEST_SUITE("ks") {
  TEST_CASE("identical samples") {
    const EmpiricalCdf a(uniforms(1, 100));
    const EmpiricalCdf b(uniforms(1, 100));
    CHECK(ks_distance(a, b) == 0.0);
  }

  TEST_CASE("disjoint supports") {
    const EmpiricalCdf a({-5.0, -4.0, -3.0});
    CHECK(ks_distance(a, [](double x) { return std::clamp(x, 0.0, 1.0); }) == 1.0);
    const EmpiricalCdf b({1.0, 2.0});
    CHECK(ks_distance(a, b) == 1.0);
  }

  TEST_CASE("uniform sample against the uniform CDF") {
    const std::size_t m = 10000;
    const EmpiricalCdf a(uniforms(77, m));
    CHECK(ks_distance(a, [](double x) { return std::clamp(x, 0.0, 1.0); }) <= ks_critical_1pct(m));
  }

  TEST_CASE("atoms use both one-sided limits") {
    // Half the mass at 0, half uniform on (0,1].
    std::vector<double> v(1000, 0.0);
    auto s = derive_stream(4, 0);
    for (std::size_t i = 500; i < 1000; ++i) v[i] = s.uniform();
    const EmpiricalCdf e(v);
    auto right = [](double x) { return x < 0 ? 0.0 : std::min(1.0, 0.5 + 0.5 * x); };
    auto left = [](double x) { return x <= 0 ? 0.0 : std::min(1.0, 0.5 + 0.5 * x); };
    CHECK(ks_distance(e, right, left) < 0.06);
    // Pretending the law is continuous at 0 misreads the jump.
    CHECK(ks_distance(e, left) >= 0.5);
  }

  TEST_CASE("two-sample symmetry and triangle inequality") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto ua = uniforms(seed * 3, 200);
      auto ub = uniforms(seed * 3 + 1, 150);
      auto uc = uniforms(seed * 3 + 2, 300);
      for (auto& x : ub) x = x * x;
      const EmpiricalCdf a(ua), b(ub), c(uc);
      CHECK(ks_distance(a, b) == ks_distance(b, a));
      CHECK(ks_distance(a, c) <= ks_distance(a, b) + ks_distance(b, c) + 1e-15);
    }
  }

  TEST_CASE("empirical CDF is right-continuous") {
    const EmpiricalCdf e({1.0, 2.0, 2.0, 3.0});
    CHECK(e(2.0) == 0.75);
    CHECK(e.left(2.0) == 0.25);
    CHECK(e(0.0) == 0.0);
    CHECK(e(3.0) == 1.0);
  }
}

TEST_SUITE("monotone_trend") {
  TEST_CASE("strictly decreasing with tiny intervals") {
    const std::vector<TrendPoint> pts{{0.8, 1e-3}, {0.5, 1e-3}, {0.3, 1e-3}, {0.1, 1e-3}};
    CHECK(monotone_trend(pts));
  }

  TEST_CASE("constant values") {
    const std::vector<TrendPoint> pts{{0.4, 0.01}, {0.4, 0.01}, {0.4, 0.01}};
    CHECK_FALSE(monotone_trend(pts));
  }

  TEST_CASE("needs three points") {
    const std::vector<TrendPoint> pts{{0.4, 0.01}, {0.1, 0.01}};
    CHECK_THROWS_AS(monotone_trend(pts), std::invalid_argument);
  }

  TEST_CASE("agrees with the exhaustive pairwise check") {
    auto s = derive_stream(12, 0);
    int passes = 0;
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<TrendPoint> pts(3 + trial % 5);
      double level = 1.0;
      for (auto& p : pts) {
        level -= 0.15 * s.uniform();
        p.value = level + 0.1 * (s.uniform() - 0.5);
        p.half_width = 0.05 * s.uniform();
      }
      const bool expected = pairwise_trend(pts);
      passes += expected ? 1 : 0;
      REQUIRE(monotone_trend(pts) == expected);
    }
    // Both outcomes occur in the sample.
    CHECK(passes > 100);
    CHECK(passes < 1900);
  }
}
