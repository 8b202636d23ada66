#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "acqf/rng.hpp"
#include "acqf/stats.hpp"
#include "oracles.hpp"

using namespace acqf;

TEST_CASE("binomial_p_value examples") {
  CHECK(binomial_p_value(10, 10, 0.5) == doctest::Approx(0.001953125).epsilon(1e-13));
  CHECK(binomial_p_value(5, 10, 0.5) == 1.0);
  CHECK(binomial_p_value(0, 0, 0.3) == 1.0);
  CHECK_THROWS_AS(binomial_p_value(11, 10, 0.5), InvalidCounts);
  CHECK_THROWS_AS(binomial_p_value(1, 10, 1.5), InvalidCounts);
}

TEST_CASE("binomial_p_value at degenerate probabilities") {
  CHECK(binomial_p_value(10, 10, 1.0) == 1.0);
  CHECK(binomial_p_value(9, 10, 1.0) == kImpossiblePValue);
  CHECK(binomial_p_value(0, 10, 0.0) == 1.0);
  CHECK(binomial_p_value(1, 10, 0.0) == kImpossiblePValue);
}

TEST_CASE("binomial_p_value matches exhaustive enumeration for n <= 50") {
  for (double p : {0.1, 0.25, 0.5, 0.853553}) {
    for (std::size_t n = 1; n <= 50; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        const double expected = oracle::binomial_p_enumerated(k, n, p);
        REQUIRE(std::abs(binomial_p_value(k, n, p) - std::max(expected, 0.0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("binomial_p_value is monotone away from the mean") {
  for (double p : {0.146, 0.5, 0.75}) {
    for (std::size_t n : {1u, 7u, 40u, 333u}) {
      const auto mode = static_cast<std::size_t>(std::floor(n * p));
      for (std::size_t k = mode + 1; k < n; ++k) {
        REQUIRE(binomial_p_value(k + 1, n, p) <= binomial_p_value(k, n, p));
      }
      for (std::size_t k = mode; k > 0; --k) {
        REQUIRE(binomial_p_value(k - 1, n, p) <= binomial_p_value(k, n, p));
      }
    }
  }
}

TEST_CASE("mid-p is never larger than the exact p-value") {
  for (std::size_t k = 0; k <= 30; ++k) {
    CHECK(binomial_p_value(k, 30, 0.3, TailConvention::MidP) <= binomial_p_value(k, 30, 0.3));
  }
}

TEST_CASE("binomial_p_value stays finite and positive for large counts") {
  const double p = binomial_p_value(100, 100, 0.5);
  CHECK(p > 0.0);
  CHECK(p == doctest::Approx(2.0 * std::pow(0.5, 100)).epsilon(1e-10));
  CHECK(binomial_p_value(5000, 10000, 0.5) == 1.0);
  CHECK(binomial_p_value(20000, 20000, 0.146) > 0.0);
}

TEST_CASE("incomplete gamma identities") {
  // Q(1, x) = exp(-x); Q(k, x) for integer k is a Poisson tail.
  for (double x : {0.0, 0.1, 1.0, 2.5, 10.0, 50.0}) {
    CHECK(gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-13));
    double poisson = 0.0, term = 1.0;
    for (int i = 0; i < 5; ++i) {
      poisson += term;
      term *= x / (i + 1);
    }
    CHECK(gamma_q(5.0, x) == doctest::Approx(std::exp(-x) * poisson).epsilon(1e-12));
    CHECK(gamma_p(5.0, x) + gamma_q(5.0, x) == doctest::Approx(1.0));
  }
  CHECK_THROWS(gamma_q(0.0, 1.0));
  CHECK_THROWS(gamma_q(1.0, -1.0));
}

TEST_CASE("fisher_combine examples") {
  const std::vector<double> ones(5, 1.0);
  const auto r1 = fisher_combine(ones);
  CHECK(r1.statistic == 0.0);
  CHECK(r1.combined_p == 1.0);

  const std::vector<double> single{0.05};
  CHECK(fisher_combine(single).combined_p == doctest::Approx(0.05).epsilon(1e-13));

  // -4 ln 0.05 and the chi-squared(4) tail from numerical integration.
  const std::vector<double> two{0.05, 0.05};
  const auto r2 = fisher_combine(two);
  CHECK(r2.statistic == doctest::Approx(11.982929094215963).epsilon(1e-13));
  CHECK(std::abs(r2.combined_p - 0.01747866136777) < 1e-10);
  CHECK(std::abs(r2.combined_p - oracle::chi2_survival_quadrature(r2.statistic, 4.0)) < 1e-10);

  CHECK_THROWS_AS(fisher_combine(std::vector<double>{}), EmptyInput);
  CHECK_THROWS_AS(fisher_combine(std::vector<double>{0.0}), std::invalid_argument);
  CHECK_THROWS_AS(fisher_combine(std::vector<double>{1.5}), std::invalid_argument);
}

TEST_CASE("fisher_combine is permutation invariant") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(1 + rng.index(40));
    for (auto& v : p) v = 1.0 - rng.uniform();
    const auto a = fisher_combine(p);
    std::sort(p.begin(), p.end());
    std::reverse(p.begin(), p.end());
    const auto b = fisher_combine(p);
    CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-12));
    CHECK(a.combined_p == doctest::Approx(b.combined_p).epsilon(1e-12));
  }
}

TEST_CASE("chi2_survival matches quadrature across regimes") {
  for (double dof : {2.0, 4.0, 7.0, 20.0, 54.0, 200.0}) {
    for (double ratio : {0.05, 0.5, 1.0, 1.5, 3.0}) {
      const double x = dof * ratio;
      REQUIRE(std::abs(chi2_survival(x, dof) - oracle::chi2_survival_quadrature(x, dof)) < 1e-9);
    }
  }
}

TEST_CASE("ks_uniform") {
  Rng rng(3);
  std::vector<double> u(2000);
  for (auto& v : u) v = rng.uniform();
  CHECK(ks_uniform(u).p_value > 0.01);

  std::vector<double> skewed(2000);
  for (auto& v : skewed) v = rng.uniform() * rng.uniform();
  CHECK(ks_uniform(skewed).p_value < 1e-6);

  const std::vector<double> one{0.5};
  CHECK(ks_uniform(one).statistic == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_uniform(std::vector<double>{}), EmptyInput);
}
