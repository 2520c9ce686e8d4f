#include "doctest.h"

#include <cmath>
#include <random>

#include "dsp/distributions.hpp"
#include "oracle.hpp"

using namespace dsp;

TEST_CASE("log_binomial") {
  CHECK(log_binomial(0, 0) == 0.0);
  CHECK(log_binomial(10, 5) == doctest::Approx(std::log(252.0)).epsilon(1e-14));
  // C(90, 50) from a big-integer product
  const double exact = std::log(static_cast<double>(oracle::choose(90, 50)));
  CHECK(std::abs(log_binomial(90, 50) - exact) <= 1e-12 * exact);
  CHECK_THROWS_AS(log_binomial(3, 4), std::domain_error);
  CHECK_THROWS_AS(log_binomial(-1, 0), std::domain_error);
  CHECK_THROWS_AS(log_binomial(5, -1), std::domain_error);
}

TEST_CASE("log_binomial stays accurate for large n") {
  // ln C(n, 1) = ln n, ln C(n, 2) = ln(n (n-1) / 2)
  for (Count n : {1000LL, 123457LL, 1000000LL}) {
    CHECK(std::abs(log_binomial(n, 1) - std::log(static_cast<double>(n))) <= 1e-12 * std::log(static_cast<double>(n)));
    const double two = std::log(static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
    CHECK(std::abs(log_binomial(n, n - 2) - two) <= 1e-12 * two);
  }
  // Pascal's rule in log space at the lgamma branch
  const double a = log_binomial(1'000'000, 400'000);
  const double b = log_binomial(999'999, 399'999);
  const double c = log_binomial(999'999, 400'000);
  CHECK(std::abs(a - (c + std::log1p(std::exp(b - c)))) <= 1e-12 * a);
}

TEST_CASE("hypergeometric pmf") {
  CHECK(hypergeometric_pmf({10, 5, 5}, 5) == doctest::Approx(1.0 / 252.0).epsilon(1e-13));
  CHECK(hypergeometric_pmf({37, 0, 12}, 0) == 1.0);
  CHECK(hypergeometric_pmf({90, 2, 50}, 0) == doctest::Approx(40.0 * 39.0 / (90.0 * 89.0)).epsilon(1e-13));
  // outside the support
  CHECK(hypergeometric_pmf({10, 2, 5}, 3) == 0.0);
  CHECK(hypergeometric_pmf({10, 8, 5}, 2) == 0.0);
  CHECK_THROWS_AS(hypergeometric_pmf({10, 11, 5}, 0), std::domain_error);
  CHECK_THROWS_AS(hypergeometric_pmf({10, 5, 11}, 0), std::domain_error);
}

TEST_CASE("hypergeometric cdf") {
  CHECK(hypergeometric_cdf({10, 5, 5}, 5) == 1.0);
  CHECK(hypergeometric_cdf({90, 2, 50}, 0) == doctest::Approx(0.194757).epsilon(1e-6));
  const double term = oracle::to_double(oracle::hypergeometric_pmf(90, 2, 50, 0) + oracle::hypergeometric_pmf(90, 2, 50, 1));
  CHECK(hypergeometric_cdf({90, 2, 50}, 1) == doctest::Approx(term).epsilon(1e-13));
  CHECK(hypergeometric_cdf({90, 2, 50}, -1) == 0.0);
}

TEST_CASE("beta-binomial pmf") {
  CHECK(beta_binomial_pmf({10, 1, 1}, 3) == doctest::Approx(1.0 / 11.0).epsilon(1e-13));
  CHECK(beta_binomial_pmf({40, 1, 51}, 0) == doctest::Approx(51.0 / 91.0).epsilon(1e-13));
  const double exact = oracle::to_double(oracle::beta_binomial_pmf(5, 2, 3, 2));
  CHECK(exact == doctest::Approx(5.0 / 21.0).epsilon(1e-15));
  CHECK(beta_binomial_pmf({5, 2, 3}, 2) == doctest::Approx(exact).epsilon(1e-13));
  CHECK_THROWS_AS(beta_binomial_pmf({5, 2, 3}, 6), std::domain_error);
  CHECK_THROWS_AS(beta_binomial_pmf({5, 0, 3}, 1), std::domain_error);
  CHECK_THROWS_AS(beta_binomial_pmf({5, 1, -1}, 1), std::domain_error);
}

TEST_CASE("beta-binomial cdf and survival") {
  CHECK(beta_binomial_cdf({10, 1, 1}, 10) == 1.0);
  CHECK(beta_binomial_cdf({51, 1, 110}, 1) == doctest::Approx(2321.0 / 2576.0).epsilon(1e-13));
  CHECK(beta_binomial_cdf({6, 1, 12}, 1) == doctest::Approx(46.0 / 51.0).epsilon(1e-13));
  CHECK(beta_binomial_cdf({6, 1, 12}, -1) == 0.0);
  CHECK(beta_binomial_sf({6, 1, 12}, 0) == 1.0);
  CHECK(beta_binomial_sf({6, 1, 12}, 7) == 0.0);
  // both summation branches
  for (Count k = 0; k <= 30; ++k) {
    const BetaBinomParams p{30, 2.5, 0.7};
    CHECK(beta_binomial_cdf(p, k - 1) + beta_binomial_sf(p, k) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("log-space agrees with exact rationals for small m") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> trials(0, 60), num(1, 40), den(1, 8);
  for (int rep = 0; rep < 60; ++rep) {
    const Count m = trials(rng);
    const int an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
    const BetaBinomParams p{m, double(an) / ad, double(bn) / bd};
    // a, b are not exactly representable in general; compare at the double inputs
    const oracle::Rat ax(p.alpha), bx(p.beta);
    for (Count k = 0; k <= m; ++k) {
      const double expected = oracle::to_double(oracle::beta_binomial_pmf(m, ax, bx, k));
      const double got = beta_binomial_pmf(p, k);
      CHECK(std::abs(got - expected) <= 1e-10 * expected);
    }
  }
}
