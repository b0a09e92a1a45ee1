// SPDX-License-Identifier: Apache-2.0
//
// Expectations over the fading law, either by Monte Carlo or (independent
// exponential fading only) by tensor Gauss-Laguerre quadrature.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "secqos/channel.hpp"
#include "secqos/quadrature.hpp"
#include "secqos/random.hpp"

namespace secqos {

struct MonteCarlo {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
};

/// Only valid for independent exponential fading (power_correlation = 0).
struct GaussLaguerre {
  int nodes_per_axis = 128;
};

using ExpectationMethod = std::variant<MonteCarlo, GaussLaguerre>;

/// Throws ConfigurationError for GaussLaguerre with correlated fading and
/// ParameterError for sample or node counts out of range.
void validate(const ExpectationMethod &method, const FadingScenario &scenario);

std::string describe(const ExpectationMethod &method);

/// Samples drawn per Monte Carlo chunk. Chunk k always uses substream k of the
/// seed, so results do not depend on how chunks are spread over workers.
inline constexpr std::int64_t kMonteCarloChunk = 1 << 16;

template <int K> using Values = Eigen::Array<double, K, 1>;

template <int K> struct Expectation {
  Values<K> mean = Values<K>::Zero();
  Values<K> std_error = Values<K>::Zero(); ///< zero for quadrature
};

namespace detail {

template <int K> struct RunningMoments {
  std::int64_t n = 0;
  Values<K> mean = Values<K>::Zero();
  Values<K> m2 = Values<K>::Zero();

  void add(const Values<K> &x) {
    ++n;
    const Values<K> delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const RunningMoments &other) {
    if (other.n == 0)
      return;
    const double na = static_cast<double>(n), nb = static_cast<double>(other.n);
    const double total = na + nb;
    const Values<K> delta = other.mean - mean;
    mean += delta * (nb / total);
    m2 += other.m2 + delta.square() * (na * nb / total);
    n += other.n;
  }
};

template <int K, typename F>
Expectation<K> expect_monte_carlo(const FadingScenario &scenario, const MonteCarlo &mc, F &f) {
  const std::int64_t chunks = (mc.samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
  std::vector<RunningMoments<K>> partial(static_cast<std::size_t>(chunks));
  parallel_for(chunks, [&](std::int64_t chunk) {
    Rng rng = make_stream(mc.seed, static_cast<std::uint64_t>(chunk));
    FadingSampler sampler(scenario);
    const std::int64_t begin = chunk * kMonteCarloChunk;
    const std::int64_t end = std::min(mc.samples, begin + kMonteCarloChunk);
    auto &acc = partial[static_cast<std::size_t>(chunk)];
    for (std::int64_t s = begin; s < end; ++s)
      acc.add(f(sampler(rng)));
  });
  RunningMoments<K> total;
  for (const auto &p : partial)
    total.merge(p);
  Expectation<K> out;
  out.mean = total.mean;
  if (total.n > 1)
    out.std_error = (total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n)).sqrt();
  return out;
}

// Each wedge of the (z1, z2) quadrant is mapped onto [0, inf)^2 with unit
// exponential weights:
//   z1 >= z2:  z1 = c v + m1 u, z2 = c v,  mass m1/(m1+m2)
//   z1 <  z2:  z1 = c v, z2 = c v + m2 u,  mass m2/(m1+m2)
// with c = m1 m2 / (m1 + m2). The integrand is smooth inside each wedge.
template <int K, typename F>
Expectation<K> expect_quadrature(const FadingScenario &scenario, const GaussLaguerre &gl, F &f) {
  const QuadratureRule &rule = gauss_laguerre_rule(gl.nodes_per_axis);
  const double m1 = scenario.mean_z1, m2 = scenario.mean_z2;
  const double c = m1 * m2 / (m1 + m2);
  const double w1 = m1 / (m1 + m2), w2 = m2 / (m1 + m2);
  const Eigen::Index n = rule.nodes.size();
  Values<K> sum1 = Values<K>::Zero(), sum2 = Values<K>::Zero();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double zc = c * rule.nodes[j];
    Values<K> inner1 = Values<K>::Zero(), inner2 = Values<K>::Zero();
    for (Eigen::Index k = 0; k < n; ++k) {
      const double u = rule.nodes[k];
      inner1 += rule.weights[k] * f(FadingSample{zc + m1 * u, zc});
      inner2 += rule.weights[k] * f(FadingSample{zc, zc + m2 * u});
    }
    sum1 += rule.weights[j] * inner1;
    sum2 += rule.weights[j] * inner2;
  }
  Expectation<K> out;
  out.mean = w1 * sum1 + w2 * sum2;
  return out;
}

} // namespace detail

/// E{f(z1, z2)} for f returning Values<K>. f must be callable concurrently.
template <int K, typename F>
Expectation<K> expect(const FadingScenario &scenario, const ExpectationMethod &method, F &&f) {
  validate(method, scenario);
  if (const auto *mc = std::get_if<MonteCarlo>(&method))
    return detail::expect_monte_carlo<K>(scenario, *mc, f);
  return detail::expect_quadrature<K>(scenario, std::get<GaussLaguerre>(method), f);
}

} // namespace secqos
