// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "secqos/errors.hpp"
#include "secqos/expectation.hpp"
#include "secqos/quadrature.hpp"

using namespace secqos;
using doctest::Approx;

TEST_CASE("Gauss-Laguerre integrates polynomials exactly") {
  const auto &rule = gauss_laguerre_rule(16);
  CHECK(rule.nodes.size() == 16);
  CHECK(rule.weights.sum() == Approx(1.0).epsilon(1e-13));
  // int x^k e^{-x} = k!
  double fact = 1.0;
  for (int k = 1; k <= 20; ++k) {
    fact *= k;
    CHECK(rule.integrate([k](double x) { return std::pow(x, k); }) ==
          Approx(fact).epsilon(1e-10));
  }
  CHECK(&gauss_laguerre_rule(16) == &rule);
}

TEST_CASE("Gauss-Laguerre smooth integrand") {
  // int e^{-x} / (1 + x) dx = e E1(1)
  const double ref = 0.596347362323194;
  CHECK(gauss_laguerre_rule(128).integrate([](double x) { return 1.0 / (1.0 + x); }) ==
        Approx(ref).epsilon(1e-7));
}

TEST_CASE("wedge quadrature of region probabilities") {
  const FadingScenario sc{FadingFamily::Rayleigh, 1.0, 3.0, 0.0};
  const auto e = expect<2>(sc, GaussLaguerre{64}, [](const FadingSample &s) {
    Values<2> v;
    v << (s.z1 >= s.z2 ? 1.0 : 0.0), std::max(s.z1 - s.z2, 0.0);
    return v;
  });
  // Pr{z1 >= z2} = m1/(m1+m2), E{(z1-z2)^+} = m1^2/(m1+m2)
  CHECK(e.mean[0] == Approx(0.25).epsilon(1e-13));
  CHECK(e.mean[1] == Approx(0.25).epsilon(1e-13));
  CHECK(e.std_error[0] == 0.0);
}

TEST_CASE("Monte Carlo does not depend on the thread count") {
  const FadingScenario sc{FadingFamily::Rayleigh, 1.0, 1.0, 0.5};
  auto f = [](const FadingSample &s) {
    Values<1> v;
    v << std::log1p(s.z1 + s.z2);
    return v;
  };
  const MonteCarlo mc{300000, 17};
  set_default_threads(1);
  const auto a = expect<1>(sc, mc, f);
  set_default_threads(4);
  const auto b = expect<1>(sc, mc, f);
  set_default_threads(0);
  CHECK(a.mean[0] == b.mean[0]);
  CHECK(a.std_error[0] == b.std_error[0]);
  CHECK(a.std_error[0] > 0.0);
}

TEST_CASE("expectation method validation") {
  const FadingScenario correlated{FadingFamily::Rayleigh, 1.0, 1.0, 0.2};
  CHECK_THROWS_AS(validate(GaussLaguerre{64}, correlated), ConfigurationError);
  CHECK_THROWS_AS(validate(GaussLaguerre{4}, FadingScenario{}), ParameterError);
  CHECK_THROWS_AS(validate(MonteCarlo{1, 1}, FadingScenario{}), ParameterError);
  CHECK_NOTHROW(validate(MonteCarlo{}, correlated));
}
