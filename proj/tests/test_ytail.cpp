#include "memlab/ytail.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace memlab;

TEST_CASE("Y sampling edge cases") {
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    CHECK(y_sample(5, 10, rng) == 5);
    CHECK(y_sample(5, 1, rng) == 0);
    CHECK(y_sample(5, 0, rng) == 0);
    CHECK(y_sample(5, 7, rng) <= 3);
  }
  CHECK_THROWS_AS(y_sample(3, 7, rng), std::invalid_argument);
  CHECK_THROWS_AS(y_sample(3, -1, rng), std::invalid_argument);
}

TEST_CASE("Y sample frequencies at n=2, r=2") {
  Rng rng(99);
  YSampler s(2);
  int ones = 0;
  const int N = 60000;
  for (int k = 0; k < N; ++k) ones += s.draw(2, rng);
  CHECK(std::abs(ones / double(N) - 1.0 / 3) < 0.01);
}

TEST_CASE("exact law of Y") {
  const auto d22 = y_exact_distribution(2, 2);
  REQUIRE(d22.size() == 2);
  CHECK(d22[0] == Rational(2, 3));
  CHECK(d22[1] == Rational(1, 3));
  CHECK(y_exact_distribution(3, 3)[1] == Rational(3, 5));
  const auto full = y_exact_distribution(4, 8);
  CHECK(full.back() == 1);

  for (int n = 1; n <= 8; ++n) {
    for (int r = 0; r <= 2 * n; ++r) {
      const auto d = y_exact_distribution(n, r);
      const auto counts = oracle::y_subset_counts(n, r);
      REQUIRE(d.size() == counts.size());
      const double total = oracle::binom(2 * n, r);
      Rational sum = 0;
      Rational mean = 0;
      for (std::size_t u = 0; u < d.size(); ++u) {
        CHECK(d[u] == Rational(counts[u], static_cast<std::int64_t>(total)));
        sum += d[u];
        mean += d[u] * static_cast<int>(u);
      }
      CHECK(sum == 1);
      CHECK(mean == y_expectation(n, r));
      CHECK(y_expectation(n, r) <= Rational(r * r, 4 * n));
    }
  }
}

TEST_CASE("expectation") {
  CHECK(y_expectation(2, 2) == Rational(1, 3));
  CHECK(y_expectation(7, 14) == 7);
  CHECK(y_expectation(7, 0) == 0);
  CHECK(y_expectation(7, 1) == 0);
}

TEST_CASE("tail bound") {
  // At the critical r the bound is exactly e^-t.
  for (int n : {50, 100, 1000}) {
    for (int t : {1, 3, 8}) {
      const double r = 2 / std::numbers::e * std::sqrt(double(n) * t);
      const double ratio = 4.0 * n * t / (std::numbers::e * r * r);
      CHECK(std::exp(-t * std::log(ratio)) == doctest::Approx(std::exp(-t)).epsilon(1e-12));
      CHECK(y_tail_bound(n, y_critical_r(n, t), t) <= std::exp(-t) * (1 + 1e-12));
    }
  }
  CHECK(y_critical_r(100, 4) == 14);
  CHECK(y_tail_bound(100, 14, 4) <= std::exp(-4.0));
  CHECK(y_tail_bound(100, 14, 4) == doctest::Approx(std::exp(-4 * std::log(1600 / (std::numbers::e * 196)))));
  CHECK_THROWS_AS(y_tail_bound(100, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(y_tail_bound(100, 3, 0), std::invalid_argument);
}

TEST_CASE("exact tail never exceeds the bound where it is informative") {
  int checked = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int r = 1; r <= 2 * n; ++r) {
      for (int t = 1; t <= r / 2; ++t) {
        if (!y_tail_bound_informative(n, r, t)) continue;
        ++checked;
        CHECK(y_exact_tail(n, r, t).convert_to<double>() <= y_tail_bound(n, r, t));
      }
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("relative entropy") {
  CHECK(relent(0.3, 0.3) == doctest::Approx(0).epsilon(1e-12));
  CHECK(std::abs(relent(0.7, 0.7)) < 1e-12);
  // Independent evaluation of 0.5 ln 2 + 0.5 ln(2/3).
  CHECK(relent(0.5, 0.25) == doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3)));
  CHECK(relent(0.5, 0.25) == doctest::Approx(0.1438).epsilon(1e-3));
  CHECK_THROWS_AS(relent(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(relent(0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_tail(10, 0.2, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_tail(10, 0.3, 0.3), std::invalid_argument);
}

TEST_CASE("Chernoff bound dominates the binomial tail") {
  CHECK(chernoff_tail(20, 0.5, 0.25) >= oracle::binomial_upper_tail(20, 0.25, 10));
  for (int n : {1, 5, 17, 60, 200}) {
    for (int ai = 1; ai <= 9; ++ai) {
      for (int pi = 1; pi < ai; ++pi) {
        const double a = ai / 10.0;
        const double p = pi / 10.0;
        const int k = static_cast<int>(std::ceil(a * n - 1e-9));
        CHECK(chernoff_tail(n, a, p) >= oracle::binomial_upper_tail(n, p, k) * (1 - 1e-9));
        CHECK(relent(a, p) >= a * std::log(a / (std::numbers::e * p)) - 1e-12);
      }
    }
  }
}

TEST_CASE("Monte Carlo tail is reproducible and independent of jobs") {
  const YExperiment e{100, 14, 2, 20000, 77};
  const auto a = y_tail_monte_carlo(e, 0.1, 1);
  const auto b = y_tail_monte_carlo(e, 0.1, 4);
  CHECK(a.hits == b.hits);
  CHECK(a.trials == 20000);
  const double exact = y_exact_tail(100, 14, 2).convert_to<double>();
  CHECK(std::abs(a.estimate - exact) < 4 * std::sqrt(exact * (1 - exact) / 20000));
}
