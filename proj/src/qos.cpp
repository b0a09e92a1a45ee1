// SPDX-License-Identifier: Apache-2.0
#include "secqos/qos.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "secqos/errors.hpp"

namespace secqos {

namespace {

void check_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw ParameterError("theta must be positive and finite, got " + std::to_string(theta));
}

void check_snr(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr))
    throw ParameterError("snr must be nonnegative and finite, got " + std::to_string(snr));
}

// theta r* of a discrete ON/OFF chain whose effective bandwidth equals C,
// with eps = theta C and d = 1 - exp(-eps).
double discrete_theta_r(double p11, double p22, double eps) {
  const double d = -std::expm1(-eps);
  const double q = 1.0 - p11;
  return eps + std::log1p(p11 * d / q) - std::log1p(-d * (1.0 - p11 - p22) / q);
}

} // namespace

GValue g_value(Message i, double snr, double theta, const FadingScenario &scenario,
               const PowerSplit &split, const ExpectationMethod &method) {
  check_theta(theta);
  check_snr(snr);
  split.validate();
  validate(method, scenario);
  if (snr == 0.0)
    return {};
  const double scale = theta / std::numbers::ln2;
  const auto e = expect<2>(scenario, method, [&](const FadingSample &s) {
    const double x = scale * message_rate_nats(i, s.z1, s.z2, snr, split.delta1, split.delta2);
    return Values<2>(std::exp(-x), -std::expm1(-x));
  });
  GValue g;
  g.value = e.mean[0];
  g.std_error = e.std_error[0];
  g.complement = e.mean[1];
  return g;
}

double effective_capacity_from_g(const GValue &g, double theta) {
  check_theta(theta);
  if (g.complement <= 0.0)
    return 0.0;
  if (g.complement >= 1.0)
    throw DomainError("effective capacity is infinite (g = 0)");
  return -std::log1p(-g.complement) / theta;
}

double effective_capacity(Message i, double snr, double theta, const FadingScenario &scenario,
                          const PowerSplit &split, const ExpectationMethod &method) {
  return effective_capacity_from_g(g_value(i, snr, theta, scenario, split, method), theta);
}

double mean_service_rate(Message i, double snr, const FadingScenario &scenario,
                         const PowerSplit &split, const ExpectationMethod &method) {
  check_snr(snr);
  split.validate();
  const auto e = expect<1>(scenario, method, [&](const FadingSample &s) {
    return Values<1>(message_rate(i, s, snr, split));
  });
  return e.mean[0];
}

double throughput_from_capacity(const SourceModel &source, double capacity, double theta) {
  validate(source);
  check_theta(theta);
  if (!(capacity >= 0.0) || !std::isfinite(capacity))
    throw ParameterError("capacity must be nonnegative and finite, got " +
                         std::to_string(capacity));
  if (capacity == 0.0)
    return 0.0;
  if (is_mmpp(source))
    return theta / std::expm1(theta) *
           throughput_from_capacity(markov_counterpart(source), capacity, theta);
  const double eps = theta * capacity;
  return std::visit(
      [&](const auto &m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantRate>) {
          return capacity;
        } else if constexpr (std::is_same_v<T, OnOffDiscreteMarkov>) {
          return on_probability(m) * discrete_theta_r(m.p11, m.p22, eps) / theta;
        } else if constexpr (std::is_same_v<T, OnOffMarkovFluid>) {
          return on_probability(m) * capacity * (eps + m.alpha + m.beta) / (eps + m.alpha);
        } else {
          throw UnsupportedError("unexpected source family " + describe(source));
        }
      },
      source);
}

double max_avg_arrival_rate(const SourceModel &source, Message i, double snr, double theta,
                            const FadingScenario &scenario, const PowerSplit &split,
                            const ExpectationMethod &method) {
  validate(source);
  const double c = effective_capacity(i, snr, theta, scenario, split, method);
  return throughput_from_capacity(source, c, theta);
}

double solve_on_rate_bisection(const SourceModel &source, double target_capacity, double theta) {
  validate(source);
  check_theta(theta);
  if (!(target_capacity >= 0.0) || !std::isfinite(target_capacity))
    throw ParameterError("target capacity must be nonnegative and finite, got " +
                         std::to_string(target_capacity));
  if (target_capacity == 0.0)
    return 0.0;

  double lo = 0.0, hi = 1.0;
  int growth = 0;
  while (effective_bandwidth(source, theta, hi) < target_capacity) {
    lo = hi;
    hi *= 2.0;
    if (++growth > 1100 || !std::isfinite(hi)) {
      std::ostringstream msg;
      msg << "no bracket for target " << target_capacity << " at theta " << theta
          << "; last upper bound " << lo << " gives a = " << effective_bandwidth(source, theta, lo);
      throw SolverError(msg.str());
    }
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (effective_bandwidth(source, theta, mid) < target_capacity)
      lo = mid;
    else
      hi = mid;
  }
  const double a_lo = effective_bandwidth(source, theta, lo);
  const double a_hi = effective_bandwidth(source, theta, hi);
  const bool use_hi = std::abs(a_hi - target_capacity) <= std::abs(a_lo - target_capacity);
  const double root = use_hi ? hi : lo;
  const double residual = std::abs((use_hi ? a_hi : a_lo) - target_capacity);
  if (residual > 1e-12 * std::max(1.0, target_capacity)) {
    std::ostringstream msg;
    msg << "bisection stalled at bracket [" << lo << ", " << hi << "] with residual "
        << residual << " for target " << target_capacity;
    throw SolverError(msg.str());
  }
  return root;
}

double delay_exponent(const SourceModel &source, double theta, double r_on) {
  return theta * effective_bandwidth(source, theta, r_on);
}

} // namespace secqos
