// SPDX-License-Identifier: Apache-2.0
#include "secqos/nocsi.hpp"

#include <string>
#include <utility>
#include <vector>

#include "secqos/errors.hpp"

namespace secqos {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kE = std::numbers::e;

void check_positive(const char *name, double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw ParameterError(std::string(name) + " must be positive and finite, got " +
                         std::to_string(x));
}

void require_supported(const SourceModel &source) {
  validate(source);
  if (is_mmpp(source))
    throw UnsupportedError("fixed-rate transmission without CSI is not covered for " +
                           describe(source));
}

double low_snr_burstiness(const SourceModel &source) {
  return std::visit(
      [&](const auto &m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantRate>)
          return 0.0;
        else if constexpr (std::is_same_v<T, OnOffDiscreteMarkov>)
          return burstiness_eta(m.p11, m.p22);
        else if constexpr (std::is_same_v<T, OnOffMarkovFluid>)
          return burstiness_zeta(m.alpha, m.beta);
        else
          throw UnsupportedError("fixed-rate transmission without CSI is not covered for " +
                                 describe(source));
      },
      source);
}

} // namespace

FixedRatePolicy FixedRatePolicy::explicit_rate(double lambda) {
  FixedRatePolicy p(false, lambda);
  p.validate();
  return p;
}

FixedRatePolicy FixedRatePolicy::coefficient(double a) {
  FixedRatePolicy p(true, a);
  p.validate();
  return p;
}

void FixedRatePolicy::validate() const {
  check_positive(coefficient_ ? "rate coefficient a" : "fixed rate lambda", value_);
}

double FixedRatePolicy::lambda(double snr) const {
  return coefficient_ ? value_ * snr / kLn2 : value_;
}

void NoCsiScenario::validate() const { check_positive("gamma", gamma); }

FadingScenario NoCsiScenario::fading() const {
  FadingScenario f;
  f.mean_z1 = 1.0;
  f.mean_z2 = gamma;
  f.power_correlation = 0.0;
  return f;
}

double secure_on_probability(double snr, double lambda, const NoCsiScenario &scenario) {
  scenario.validate();
  check_positive("snr", snr);
  check_positive("lambda", lambda);
  const double growth = std::expm1(lambda * kLn2); // 2^lambda - 1
  return std::exp(-growth / snr) / (scenario.gamma * (1.0 + growth) + 1.0);
}

double secure_on_probability(double snr, double lambda, const FadingScenario &scenario,
                             const ExpectationMethod &method) {
  check_positive("snr", snr);
  check_positive("lambda", lambda);
  const auto e = expect<1>(scenario, method, [&](const FadingSample &s) {
    return Values<1>(nocsi_secure_on(s, snr, lambda) ? 1.0 : 0.0);
  });
  return e.mean[0];
}

GValue nocsi_g_value(double snr, double theta, const FixedRatePolicy &policy,
                     const NoCsiScenario &scenario) {
  policy.validate();
  check_positive("theta", theta);
  const double lambda = policy.lambda(snr);
  const double p_on = secure_on_probability(snr, lambda, scenario);
  GValue g;
  g.complement = p_on * -std::expm1(-theta * lambda);
  g.value = 1.0 - g.complement;
  return g;
}

double effective_capacity_nocsi(double snr, double theta, const FixedRatePolicy &policy,
                                const NoCsiScenario &scenario) {
  return effective_capacity_from_g(nocsi_g_value(snr, theta, policy, scenario), theta);
}

double nocsi_throughput(const SourceModel &source, double snr, double theta,
                        const FixedRatePolicy &policy, const NoCsiScenario &scenario) {
  require_supported(source);
  const double c = effective_capacity_nocsi(snr, theta, policy, scenario);
  return throughput_from_capacity(source, c, theta);
}

LowSnrMetrics nocsi_low_snr_metrics(const SourceModel &source, double theta, double gamma) {
  require_supported(source);
  check_positive("theta", theta);
  check_positive("gamma", gamma);
  const double b = low_snr_burstiness(source);
  LowSnrMetrics m;
  m.method = MetricsMethod::ClosedForm;
  m.ebn0_min = nocsi_ebn0_for_coefficient(1.0, gamma);
  m.slope_s0 = 1.0 / (theta * (b - 1.0) / (2.0 * kLn2) +
                      theta * kE * (gamma + 1.0) / (2.0 * kLn2) + kE * gamma +
                      kE * (gamma + 1.0) / 2.0);
  return m;
}

double nocsi_ebn0_for_coefficient(double a, double gamma) {
  check_positive("a", a);
  check_positive("gamma", gamma);
  return (gamma + 1.0) * kLn2 * std::exp(a) / a;
}

double nocsi_ebn0_excess(double gamma) {
  check_positive("gamma", gamma);
  const NoCsiScenario scenario{gamma};
  const LowSnrMoments perfect =
      low_snr_moments_analytic(Message::Confidential1, scenario.fading(), PowerSplit{1.0, 1.0});
  return nocsi_ebn0_for_coefficient(1.0, gamma) -
         min_ebn0_from_moments(ConstantRate{}, 1.0, perfect);
}

double nocsi_g_derivative_at_zero(double theta, double a, double gamma) {
  check_positive("theta", theta);
  check_positive("a", a);
  check_positive("gamma", gamma);
  return -std::exp(-a) * theta * a / ((gamma + 1.0) * kLn2);
}

LowSnrMetrics nocsi_numeric_metrics(const SourceModel &source, double theta,
                                    const FixedRatePolicy &policy, const NoCsiScenario &scenario) {
  std::vector<std::pair<double, double>> curve;
  for (double snr : low_snr_fit_grid())
    curve.emplace_back(snr, nocsi_throughput(source, snr, theta, policy, scenario));
  return fit_low_snr_metrics(curve, 1.0);
}

} // namespace secqos
