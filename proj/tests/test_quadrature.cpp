#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rais/quadrature.hpp"

using namespace rais;

TEST_CASE("weights sum to sqrt(pi)") {
  for (int n : {4, 8, 16}) {
    const GaussHermite rule = gauss_hermite(n);
    double total = 0.0;
    for (double w : rule.weights) total += w;
    CHECK(total == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  }
}

TEST_CASE("gaussian moments are exact") {
  const GaussHermite rule = gauss_hermite(16);

  // E[x^k] under N(0.3, 1.7^2); odd central moments vanish.
  const double m = 0.3, s = 1.7;
  CHECK(gaussian_expectation(rule, m, s, [](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gaussian_expectation(rule, m, s, [](double x) { return x; }) ==
        doctest::Approx(m).epsilon(1e-13));
  CHECK(gaussian_expectation(rule, m, s, [](double x) { return x * x; }) ==
        doctest::Approx(m * m + s * s).epsilon(1e-13));
  CHECK(gaussian_expectation(rule, m, s, [&](double x) { return std::pow(x - m, 4); }) ==
        doctest::Approx(3.0 * s * s * s * s).epsilon(1e-12));
}

TEST_CASE("16-node rule integrates degree-31 monomials exactly") {
  const GaussHermite rule = gauss_hermite(16);
  // Central moments of N(0, 1): E[x^{2k}] = (2k-1)!!.
  double dfact = 1.0;
  for (int k = 1; k <= 15; ++k) {
    dfact *= 2.0 * k - 1.0;
    const double got =
        gaussian_expectation(rule, 0.0, 1.0, [&](double x) { return std::pow(x, 2 * k); });
    CHECK(got == doctest::Approx(dfact).epsilon(1e-10));
  }
}

TEST_CASE("quadrature handles a non-polynomial integrand") {
  const GaussHermite rule = gauss_hermite(16);
  // E[exp(t x)] for x ~ N(0, 1) is exp(t^2 / 2).
  const double t = 0.8;
  CHECK(gaussian_expectation(rule, 0.0, 1.0, [&](double x) { return std::exp(t * x); }) ==
        doctest::Approx(std::exp(t * t / 2.0)).epsilon(1e-10));
}
