// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "secqos/channel.hpp"
#include "secqos/errors.hpp"
#include "secqos/random.hpp"

using namespace secqos;
using doctest::Approx;

TEST_CASE("region classification") {
  CHECK(classify_region({1.0, 1.0}) == Region::Gamma1);
  CHECK(classify_region({3.0, 1.0}) == Region::Gamma1);
  CHECK(classify_region({0.2, 0.5}) == Region::Gamma2);
}

TEST_CASE("instantaneous rates") {
  const auto r = instantaneous_rates({3.0, 1.0}, 1.0, {0.5, 0.5});
  CHECK(r.region == Region::Gamma1);
  CHECK(r.r1 == Approx(std::log2(2.5 / 1.5)).epsilon(1e-14));
  CHECK(r.r0 == Approx(std::log2(4.0 / 3.0)).epsilon(1e-14));
  CHECK(r.r2 == 0.0);

  const auto full = instantaneous_rates({3.0, 1.0}, 1.0, {1.0, 1.0});
  CHECK(full.r0 == Approx(0.0).epsilon(1e-15));
  CHECK(full.r1 == Approx(1.0).epsilon(1e-14));

  const auto g2 = instantaneous_rates({1.0, 3.0}, 1.0, {0.5, 0.5});
  CHECK(g2.region == Region::Gamma2);
  CHECK(g2.r2 == Approx(std::log2(2.5 / 1.5)).epsilon(1e-14));
  CHECK(g2.r1 == 0.0);
  CHECK(g2.rate(Message::Common) == g2.r0);
}

TEST_CASE("secrecy rate") {
  CHECK(secrecy_rate_generic(3.0, 1.0, 1.0) == Approx(1.0).epsilon(1e-14));
  CHECK(secrecy_rate_generic(2.0, 2.0, 4.0) == 0.0);
  CHECK(secrecy_rate_generic(1.0, 3.0, 5.0) == 0.0);
}

TEST_CASE("rates are non-negative and sum below the stronger user's capacity") {
  std::mt19937_64 rng(5);
  std::exponential_distribution<double> e(1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const FadingSample s{e(rng), e(rng)};
    const PowerSplit split{u(rng), u(rng)};
    const double snr = 10 * u(rng) + 1e-3;
    const auto r = instantaneous_rates(s, snr, split);
    CHECK(r.r0 >= 0.0);
    CHECK(r.r1 >= 0.0);
    CHECK(r.r2 >= 0.0);
    CHECK(r.r0 + r.r1 + r.r2 <= std::log2(1 + snr * std::max(s.z1, s.z2)) + 1e-12);
  }
}

TEST_CASE("power split validation") {
  CHECK_THROWS_AS((PowerSplit{1.5, 0.5}.validate()), ParameterError);
  CHECK_THROWS_AS((FadingScenario{FadingFamily::Rayleigh, 1.0, 1.0, 1.0}.validate()),
                  ParameterError);
  CHECK_THROWS_AS((FadingScenario{FadingFamily::Rayleigh, 0.0, 1.0, 0.0}.validate()),
                  ParameterError);
  CHECK(FadingScenario{}.independent_exponential());
  CHECK_FALSE((FadingScenario{FadingFamily::Rayleigh, 1.0, 1.0, 0.3}.independent_exponential()));
}

TEST_CASE("fading sampler moments and correlation") {
  const FadingScenario sc{FadingFamily::Rayleigh, 1.0, 2.0, 0.8};
  FadingSampler sampler(sc);
  Rng rng = make_stream(9, 0);
  const int n = 1000000;
  double s1 = 0, s2 = 0, s11 = 0, s22 = 0, s12 = 0;
  for (int k = 0; k < n; ++k) {
    const auto s = sampler(rng);
    s1 += s.z1;
    s2 += s.z2;
    s11 += s.z1 * s.z1;
    s22 += s.z2 * s.z2;
    s12 += s.z1 * s.z2;
  }
  const double m1 = s1 / n, m2 = s2 / n;
  const double corr = (s12 / n - m1 * m2) /
                      std::sqrt((s11 / n - m1 * m1) * (s22 / n - m2 * m2));
  CHECK(m1 == Approx(1.0).epsilon(0.01));
  CHECK(m2 == Approx(2.0).epsilon(0.01));
  CHECK(corr >= 0.79);
  CHECK(corr <= 0.81);
}

TEST_CASE("independent sampler gives exponential marginals") {
  FadingSampler sampler(FadingScenario{FadingFamily::Rayleigh, 1.0, 0.5, 0.0});
  Rng rng = make_stream(4, 0);
  const int n = 400000;
  int above = 0, g1 = 0;
  for (int k = 0; k < n; ++k) {
    const auto s = sampler(rng);
    above += s.z1 > 1.0;
    g1 += s.z1 >= s.z2;
  }
  CHECK(above / double(n) == Approx(std::exp(-1.0)).epsilon(0.01));
  CHECK(g1 / double(n) == Approx(1.0 / 1.5).epsilon(0.01));
}

TEST_CASE("random streams are reproducible and distinct") {
  Rng a = make_stream(42, 3), b = make_stream(42, 3), c = make_stream(42, 4);
  CHECK(a() == b());
  CHECK(a() != c());
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
}
