#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "skewdiff/errors.hpp"
#include "skewdiff/gaussian.hpp"
#include "skewdiff/grid.hpp"
#include "skewdiff/holder.hpp"
#include "skewdiff/parallel.hpp"
#include "skewdiff/quadrature.hpp"
#include "skewdiff/rng.hpp"
#include "skewdiff/wiener.hpp"

using namespace skewdiff;

TEST_SUITE("grid") {
  TEST_CASE("node times are k*T/m") {
    const auto g = make_grid(1.0, 4);
    CHECK(g.node_count() == 5);
    const std::vector<double> expected{0.0, 0.25, 0.5, 0.75, 1.0};
    for (std::size_t k = 0; k < 5; ++k) CHECK(g.time(k) == expected[k]);
    CHECK(g.dt() == 0.25);
  }

  TEST_CASE("single step") {
    const auto g = make_grid(2.0, 1);
    CHECK(g.node_count() == 2);
    CHECK(g.time(0) == 0.0);
    CHECK(g.time(1) == 2.0);
  }

  TEST_CASE("last node equals the horizon for awkward step counts") {
    for (std::size_t m : {3u, 7u, 1000u, 9999u}) {
      const auto g = make_grid(0.3, m);
      CHECK(g.time(m) == 0.3);
    }
  }

  TEST_CASE("invalid arguments") {
    CHECK_THROWS_AS(make_grid(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 4), std::invalid_argument);
  }
}

TEST_SUITE("rng") {
  TEST_CASE("same seed and index give identical sequences") {
    auto a = derive_stream(7, 0);
    auto b = derive_stream(7, 0);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
  }

  TEST_CASE("different indices give different sequences") {
    auto a = derive_stream(7, 0);
    auto b = derive_stream(7, 1);
    int equal = 0;
    for (int i = 0; i < 100; ++i) equal += a() == b() ? 1 : 0;
    CHECK(equal == 0);
  }

  TEST_CASE("copies replay the same sequence") {
    auto a = derive_stream(3, 5);
    a.normal();
    auto b = a;
    for (int i = 0; i < 10; ++i) CHECK(a.normal() == b.normal());
  }

  TEST_CASE("uniform lies in the open unit interval") {
    auto s = derive_stream(11, 2);
    for (int i = 0; i < 100000; ++i) {
      const double u = s.uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
    }
  }

  TEST_CASE("substreams are uncorrelated") {
    // Adjacent substreams (k, k+1) for k < 10^4, first 10^3 uniforms each.
    // Under independence each correlation is ~N(0, 1/1000), so ±0.05 is a
    // 1.58σ band: the mean correlation must sit well inside it and the
    // exceedance rate must match the null rate 2Φ̄(0.05·sqrt(1000)) ≈ 0.114.
    constexpr std::size_t kStreams = 10000;
    constexpr std::size_t kDraws = 1000;
    std::vector<double> prev(kDraws), cur(kDraws);
    auto fill = [&](std::vector<double>& v, std::size_t index) {
      auto s = derive_stream(7, index);
      for (auto& x : v) x = s.uniform();
    };
    fill(prev, 0);
    double sum = 0.0;
    std::size_t exceed = 0;
    for (std::size_t k = 1; k <= kStreams; ++k) {
      fill(cur, k);
      const double r = oracle::correlation(prev, cur);
      sum += r;
      if (std::abs(r) > 0.05) ++exceed;
      std::swap(prev, cur);
    }
    const double mean = sum / kStreams;
    CHECK(std::abs(mean) < 0.05);
    CHECK(std::abs(mean) < 4.0 / std::sqrt(1000.0 * kStreams));
    const double null_rate = std::erfc(0.05 * std::sqrt(1000.0) / std::sqrt(2.0));
    const double rate = static_cast<double>(exceed) / kStreams;
    CHECK(std::abs(rate - null_rate) < 4.0 * std::sqrt(null_rate * (1 - null_rate) / kStreams));
  }

  TEST_CASE("addressed normals do not depend on the sequential cursor") {
    auto s = derive_stream(5, 9);
    const auto before = s.normal_pair_at(42);
    for (int i = 0; i < 17; ++i) s.normal();
    const auto after = s.normal_pair_at(42);
    CHECK(before == after);
    CHECK(s.normal_pair_at(41) != before);
  }

  TEST_CASE("path streams separate paths and lanes") {
    auto a = path_stream(1, 3, 0);
    auto b = path_stream(1, 3, 1);
    auto c = path_stream(1, 4, 0);
    const auto va = a();
    CHECK(va != b());
    CHECK(va != c());
  }
}

TEST_SUITE("wiener") {
  TEST_CASE("starts at the origin and is deterministic") {
    const auto g = make_grid(1.0, 50);
    auto s1 = derive_stream(1, 0);
    auto s2 = derive_stream(1, 0);
    const auto a = sample_wiener(g, 3, s1);
    const auto b = sample_wiener(g, 3, s2);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a.at(0, i) == 0.0);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  }

  TEST_CASE("terminal variance and increment means") {
    // M = 10^5 paths, T = 1: sample variance within 3 SE (SE ≈ sqrt(2/M)).
    constexpr std::size_t kPaths = 100000;
    const auto g = make_grid(1.0, 4);
    std::vector<double> terminal(kPaths);
    std::vector<double> increment_sum(4, 0.0);
    for (std::size_t p = 0; p < kPaths; ++p) {
      auto s = path_stream(2024, p);
      const auto w = sample_wiener(g, 1, s);
      terminal[p] = w.at(4);
      for (std::size_t k = 0; k < 4; ++k) increment_sum[k] += w.increment(k);
    }
    double mean = 0.0;
    for (double v : terminal) mean += v;
    mean /= kPaths;
    double var = 0.0;
    for (double v : terminal) var += (v - mean) * (v - mean);
    var /= (kPaths - 1);
    CHECK(std::abs(var - 1.0) <= 3.0 * std::sqrt(2.0 / kPaths));
    for (double s : increment_sum) {
      CHECK(std::abs(s / kPaths) <= 4.0 * std::sqrt(g.dt() / kPaths));
    }
  }

  TEST_CASE("rejects paths that do not start at zero") {
    const auto g = make_grid(1.0, 1);
    CHECK_THROWS_AS(WienerPath(g, 1, {0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(WienerPath(g, 1, {0.0}), std::invalid_argument);
  }
}

TEST_SUITE("gaussian") {
  TEST_CASE("known values") {
    CHECK(gaussian_tail(0.0) == 0.5);
    CHECK(gaussian_tail(40.0) == 0.0);
    CHECK(gaussian_tail(1.0) == doctest::Approx(0.158655253931457).epsilon(1e-12));
  }

  TEST_CASE("agrees with quadrature of the density") {
    for (double z : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.5, 5.0}) {
      CHECK(std::abs(gaussian_tail(z) - oracle::tail_by_quadrature(z)) < 1e-12);
    }
  }

  TEST_CASE("monotone and in [0,1]") {
    double prev = 1.0;
    for (double z = -10.0; z <= 10.0; z += 0.01) {
      const double v = gaussian_tail(z);
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
      REQUIRE(v <= prev);
      prev = v;
    }
  }

  TEST_CASE("inverse tail") {
    for (double p : {1e-10, 1e-4, 0.1, 0.3, 0.5, 0.9, 0.999}) {
      CHECK(gaussian_tail(inverse_gaussian_tail(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK_THROWS_AS(inverse_gaussian_tail(0.0), std::domain_error);
    CHECK_THROWS_AS(inverse_gaussian_tail(1.0), std::domain_error);
  }
}

TEST_SUITE("quadrature") {
  TEST_CASE("polynomials and constants") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return x; }, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(integrate([](double x) { return x; }, 1.0, 1.0) == 0.0);
  }

  TEST_CASE("normal density on [-8, 8]") {
    const double v = integrate(gaussian_density, -8.0, 8.0, 1e-12);
    CHECK(std::abs(v - 1.0) < 1e-10);
    CHECK(std::abs(v - (1.0 - 2.0 * gaussian_tail(8.0))) < 1e-13);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, 0.0), std::invalid_argument);
    // 1/x on (0,1] diverges: refinement cannot meet the tolerance.
    CHECK_THROWS_AS(integrate([](double x) { return x > 0 ? 1.0 / x : 1e300; }, 0.0, 1.0),
                    NumericFailure);
  }
}

TEST_SUITE("holder") {
  TEST_CASE("constant and linear paths") {
    const auto g = make_grid(1.0, 64);
    CHECK(holder_quarter_norm(WienerPath(g, 1, std::vector<double>(65, 0.0)), 1.0) == 0.0);
    std::vector<double> linear(65);
    for (std::size_t k = 0; k < 65; ++k) linear[k] = -2.5 * g.time(k);
    CHECK(holder_quarter_norm(WienerPath(g, 1, linear), 1.0) == doctest::Approx(2.5).epsilon(1e-14));
  }

  TEST_CASE("matches exhaustive evaluation and is monotone in the window") {
    const auto g = make_grid(2.0, 255);
    auto s = derive_stream(99, 0);
    const auto w = sample_wiener(g, 1, s);
    double brute = 0.0;
    for (std::size_t i = 0; i < 256; ++i) {
      for (std::size_t j = 0; j < 256; ++j) {
        if (j <= i) continue;
        brute = std::max(brute, std::abs(w.at(j) - w.at(i)) /
                                    std::pow(g.time(j) - g.time(i), 0.25));
      }
    }
    CHECK(holder_quarter_norm(w, 2.0) == brute);
    double prev = 0.0;
    for (double n : {0.1, 0.5, 1.0, 1.5, 2.0}) {
      const double v = holder_quarter_norm(w, n);
      CHECK(v >= prev);
      prev = v;
    }
  }

  TEST_CASE("empty window") {
    const auto g = make_grid(1.0, 10);
    const WienerPath w(g, 1, std::vector<double>(11, 0.0));
    CHECK_THROWS_AS(holder_quarter_norm(w, 0.05), std::invalid_argument);
    CHECK_THROWS_AS(holder_quarter_norm(w, 2.0), std::invalid_argument);
  }
}

TEST_SUITE("parallel") {
  TEST_CASE("results are ordered and worker-count independent") {
    auto fn = [](std::size_t i) { return static_cast<double>(i * i); };
    const auto one = parallel_map(1000, 1, fn);
    const auto many = parallel_map(1000, 16, fn);
    CHECK(one == many);
    CHECK(one[31] == 961.0);
  }

  TEST_CASE("exceptions propagate") {
    CHECK_THROWS_AS(parallel_map(100, 4,
                                 [](std::size_t i) -> int {
                                   if (i == 57) throw std::runtime_error("boom");
                                   return 0;
                                 }),
                    std::runtime_error);
  }
}
