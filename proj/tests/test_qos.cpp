// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <doctest.h>

#include "secqos/errors.hpp"
#include "secqos/qos.hpp"

using namespace secqos;
using doctest::Approx;

namespace {

const FadingScenario kIid{};
const PowerSplit kHalf{0.5, 0.5};
const GaussLaguerre kQuad{128};

} // namespace

TEST_CASE("g and effective capacity reference values") {
  // direct 2-D integration, tests/oracle/derive.py
  const GValue g = g_value(Message::Confidential1, 1.0, 1.0, kIid, kHalf, kQuad);
  CHECK(g.value == Approx(0.838996100084126).epsilon(1e-11));
  CHECK(effective_capacity(Message::Confidential1, 1.0, 1.0, kIid, kHalf, kQuad) ==
        Approx(0.175549220816407).epsilon(1e-11));

  const FadingScenario sc{FadingFamily::Rayleigh, 1.0, 2.0, 0.0};
  const PowerSplit split{0.3, 0.6};
  const double ref[3] = {0.376484196646844, 0.13004475943353, 0.547682783505057};
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    CHECK(effective_capacity(Message(i), 2.0, 0.7, sc, split, kQuad) ==
          Approx(ref[i]).epsilon(1e-10));
  }
}

TEST_CASE("Monte Carlo g agrees with quadrature") {
  const GValue q = g_value(Message::Confidential1, 1.0, 1.0, kIid, kHalf, kQuad);
  const GValue mc = g_value(Message::Confidential1, 1.0, 1.0, kIid, kHalf, MonteCarlo{2'000'000, 5});
  CHECK(mc.std_error > 0.0);
  CHECK(std::abs(mc.value - q.value) <= 3.0 * mc.std_error);
}

TEST_CASE("g edge cases") {
  for (int i = 0; i < 3; ++i)
    CHECK(g_value(Message(i), 0.0, 1.0, kIid, kHalf, kQuad).value == 1.0);
  CHECK(g_value(Message::Confidential1, 5.0, 1.0, kIid, {0.0, 0.5}, kQuad).value == Approx(1.0).epsilon(1e-14));
  CHECK(effective_capacity(Message::Common, 0.0, 1.0, kIid, kHalf, kQuad) == 0.0);
  CHECK_THROWS_AS(g_value(Message::Common, 1.0, 1.0, {FadingFamily::Rayleigh, 1.0, 1.0, 0.3},
                          kHalf, kQuad),
                  ConfigurationError);
}

TEST_CASE("small theta recovers the mean service rate") {
  const double ce = effective_capacity(Message::Confidential1, 1.0, 1e-4, kIid, kHalf, kQuad);
  const double mean = mean_service_rate(Message::Confidential1, 1.0, kIid, kHalf, kQuad);
  CHECK(ce == Approx(mean).epsilon(1e-3));
  CHECK(ce < mean);
}

TEST_CASE("throughput reference values") {
  // bisection on the spectral-radius bandwidth, tests/oracle/derive.py
  CHECK(max_avg_arrival_rate(OnOffDiscreteMarkov{0.8, 0.8}, Message::Confidential1, 1.0, 1.0,
                             kIid, kHalf, kQuad) == Approx(0.139308026941969).epsilon(1e-10));
  CHECK(max_avg_arrival_rate(OnOffMarkovFluid{9.0, 1.0}, Message::Confidential2, 1.0, 1.0,
                             kIid, kHalf, kQuad) == Approx(0.175213355047637).epsilon(1e-10));
}

TEST_CASE("throughput special sources") {
  const double c = 0.4;
  CHECK(throughput_from_capacity(ConstantRate{}, c, 1.3) == c);
  CHECK(throughput_from_capacity(OnOffDiscreteMarkov{0.0, 1.0}, c, 1.3) ==
        Approx(c).epsilon(1e-14));
  for (double theta : {0.1, 1.0, 3.0}) {
    const OnOffDiscreteMarkov disc{0.3, 0.7};
    const double scale = theta / std::expm1(theta);
    CHECK(throughput_from_capacity(OnOffDiscreteMmpp{0.3, 0.7}, c, theta) ==
          Approx(scale * throughput_from_capacity(disc, c, theta)).epsilon(1e-14));
    CHECK(throughput_from_capacity(OnOffContinuousMmpp{2.0, 3.0}, c, theta) ==
          Approx(scale * throughput_from_capacity(OnOffMarkovFluid{2.0, 3.0}, c, theta))
              .epsilon(1e-14));
  }
}

TEST_CASE("closed-form throughput inverts the effective bandwidth") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.02, 0.98), th(0.05, 4.0), cap(1e-4, 3.0);
  for (int k = 0; k < 400; ++k) {
    SourceModel m;
    switch (k % 4) {
    case 0: m = OnOffDiscreteMarkov{u(rng), u(rng)}; break;
    case 1: m = OnOffMarkovFluid{5 * u(rng), 5 * u(rng)}; break;
    case 2: m = OnOffDiscreteMmpp{u(rng), u(rng)}; break;
    default: m = OnOffContinuousMmpp{5 * u(rng), 5 * u(rng)}; break;
    }
    const double theta = th(rng), c = cap(rng);
    const double closed = throughput_from_capacity(m, c, theta);
    const double r = solve_on_rate_bisection(m, c, theta);
    CAPTURE(describe(m));
    CAPTURE(theta);
    CAPTURE(c);
    CHECK(closed == Approx(on_probability(m) * r).epsilon(1e-9));
    CHECK(effective_bandwidth(m, theta, closed / on_probability(m)) == Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("bisection edge cases") {
  CHECK(solve_on_rate_bisection(OnOffDiscreteMarkov{0.8, 0.8}, 0.0, 1.0) == 0.0);
  CHECK(solve_on_rate_bisection(ConstantRate{}, 0.7, 1.0) == Approx(0.7).epsilon(1e-12));
  const double r = solve_on_rate_bisection(OnOffDiscreteMarkov{0.8, 0.8}, 0.5, 1.0);
  CHECK(effective_bandwidth(OnOffDiscreteMarkov{0.8, 0.8}, 1.0, r) == Approx(0.5).epsilon(1e-12));
  CHECK(r * 0.5 == Approx(throughput_from_capacity(OnOffDiscreteMarkov{0.8, 0.8}, 0.5, 1.0))
                       .epsilon(1e-9));
}

TEST_CASE("delay exponent") {
  CHECK(delay_exponent(ConstantRate{}, 1.0, 2.0) == Approx(2.0).epsilon(1e-15));
  CHECK(delay_exponent(OnOffDiscreteMarkov{0.8, 0.8}, 1.0, 0.0) == 0.0);
  CHECK(delay_exponent(OnOffDiscreteMarkov{0.8, 0.8}, 1.0, 1.0) ==
        Approx(0.810766471346632).epsilon(1e-13));
}
