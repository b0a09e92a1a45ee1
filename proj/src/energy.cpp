// SPDX-License-Identifier: Apache-2.0
#include "secqos/energy.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "secqos/errors.hpp"
#include "secqos/qos.hpp"

namespace secqos {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void check_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw ParameterError("theta must be positive and finite, got " + std::to_string(theta));
}

// eta for discrete chains, zeta for continuous ones, 0 for constant rate.
double source_burstiness(const SourceModel &source) {
  return std::visit(
      [](const auto &m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ConstantRate>)
          return 0.0;
        else if constexpr (std::is_same_v<T, OnOffDiscreteMarkov> ||
                           std::is_same_v<T, OnOffDiscreteMmpp>)
          return burstiness_eta(m.p11, m.p22);
        else
          return burstiness_zeta(m.alpha, m.beta);
      },
      source);
}

// Extra energy per bit of Poisson arrivals, (e^theta - 1)/theta; 1 otherwise.
double mmpp_penalty(const SourceModel &source, double theta) {
  return is_mmpp(source) ? std::expm1(theta) / theta : 1.0;
}

void require_power(Message i, const PowerSplit &split) {
  if (i == Message::Confidential1 && split.delta1 == 0.0)
    throw ParameterError("user 1 confidential stream carries no power (delta1 = 0)");
  if (i == Message::Confidential2 && split.delta2 == 0.0)
    throw ParameterError("user 2 confidential stream carries no power (delta2 = 0)");
  if (i == Message::Common && split.delta1 == 1.0 && split.delta2 == 1.0)
    throw ParameterError("common stream carries no power (delta1 = delta2 = 1)");
}

} // namespace

FDerivatives f_derivatives(const FadingSample &s, const PowerSplit &split, Message i) {
  const bool gamma1 = classify_region(s) == Region::Gamma1;
  const double d1 = split.delta1, d2 = split.delta2;
  switch (i) {
  case Message::Confidential1:
    if (!gamma1)
      return {};
    return {d1 * (s.z1 - s.z2), -d1 * d1 * (s.z1 * s.z1 - s.z2 * s.z2)};
  case Message::Confidential2:
    if (gamma1)
      return {};
    return {d2 * (s.z2 - s.z1), -d2 * d2 * (s.z2 * s.z2 - s.z1 * s.z1)};
  case Message::Common:
    if (gamma1)
      return {(1.0 - d1) * s.z2, -(1.0 - d1 * d1) * s.z2 * s.z2};
    return {(1.0 - d2) * s.z1, -(1.0 - d2 * d2) * s.z1 * s.z1};
  }
  return {};
}

double power_weight(Message i, double pr_gamma1, const PowerSplit &split) {
  const double pr_gamma2 = 1.0 - pr_gamma1;
  switch (i) {
  case Message::Confidential1:
    return split.delta1 * pr_gamma1;
  case Message::Confidential2:
    return split.delta2 * pr_gamma2;
  case Message::Common:
    return (1.0 - split.delta1) * pr_gamma1 + (1.0 - split.delta2) * pr_gamma2;
  }
  return 0.0;
}

LowSnrMoments low_snr_moments_analytic(Message i, const FadingScenario &scenario,
                                       const PowerSplit &split) {
  scenario.validate();
  split.validate();
  if (!scenario.independent_exponential())
    throw ConfigurationError("analytic low-SNR moments need independent exponential fading");
  const double m1 = scenario.mean_z1, m2 = scenario.mean_z2;
  const double p1 = m1 / (m1 + m2), p2 = m2 / (m1 + m2);
  const double c = m1 * m2 / (m1 + m2);
  const double d1 = split.delta1, d2 = split.delta2;

  LowSnrMoments m;
  m.pr_gamma1 = p1;
  m.weight = power_weight(i, p1, split);
  switch (i) {
  case Message::Confidential1:
    m.mean_fdot = d1 * p1 * m1;
    m.mean_fdot_sq = 2.0 * d1 * d1 * p1 * m1 * m1;
    m.mean_fddot = -d1 * d1 * p1 * (2.0 * m1 * m1 + 2.0 * m1 * c);
    break;
  case Message::Confidential2:
    m.mean_fdot = d2 * p2 * m2;
    m.mean_fdot_sq = 2.0 * d2 * d2 * p2 * m2 * m2;
    m.mean_fddot = -d2 * d2 * p2 * (2.0 * m2 * m2 + 2.0 * m2 * c);
    break;
  case Message::Common:
    m.mean_fdot = c * ((1.0 - d1) * p1 + (1.0 - d2) * p2);
    m.mean_fdot_sq = 2.0 * c * c * ((1.0 - d1) * (1.0 - d1) * p1 + (1.0 - d2) * (1.0 - d2) * p2);
    m.mean_fddot = -2.0 * c * c * ((1.0 - d1 * d1) * p1 + (1.0 - d2 * d2) * p2);
    break;
  }
  return m;
}

LowSnrMoments low_snr_moments_expected(Message i, const FadingScenario &scenario,
                                       const PowerSplit &split, const ExpectationMethod &method) {
  split.validate();
  const auto e = expect<4>(scenario, method, [&](const FadingSample &s) {
    const FDerivatives f = f_derivatives(s, split, i);
    const double in_gamma1 = classify_region(s) == Region::Gamma1 ? 1.0 : 0.0;
    return Values<4>(in_gamma1, f.fdot, f.fdot * f.fdot, f.fddot);
  });
  LowSnrMoments m;
  m.pr_gamma1 = e.mean[0];
  m.weight = power_weight(i, m.pr_gamma1, split);
  m.mean_fdot = e.mean[1];
  m.mean_fdot_sq = e.mean[2];
  m.mean_fddot = e.mean[3];
  return m;
}

LowSnrMoments low_snr_moments(Message i, const FadingScenario &scenario, const PowerSplit &split,
                              const ExpectationMethod &method) {
  scenario.validate();
  if (scenario.independent_exponential())
    return low_snr_moments_analytic(i, scenario, split);
  return low_snr_moments_expected(i, scenario, split, method);
}

double LowSnrMetrics::ebn0_min_db() const { return linear_to_db(ebn0_min); }

std::string to_string(MetricsMethod method) {
  return method == MetricsMethod::ClosedForm ? "closed-form" : "numeric-fit";
}

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double min_ebn0_from_moments(const SourceModel &source, double theta, const LowSnrMoments &m) {
  validate(source);
  check_theta(theta);
  if (!(m.mean_fdot > 0.0) || !(m.weight > 0.0))
    throw DomainError("minimum energy per bit undefined: E{fdot} = " +
                      std::to_string(m.mean_fdot) + ", power weight = " +
                      std::to_string(m.weight));
  return m.weight * kLn2 / m.mean_fdot * mmpp_penalty(source, theta);
}

double min_ebn0_closed_form(const SourceModel &source, Message i, double theta,
                            const FadingScenario &scenario, const PowerSplit &split,
                            const ExpectationMethod &method) {
  validate(source);
  check_theta(theta);
  scenario.validate();
  split.validate();
  require_power(i, split);
  if (!scenario.independent_exponential())
    return min_ebn0_from_moments(source, theta, low_snr_moments(i, scenario, split, method));

  // The power weight cancels: ln2/mean_z1, ln2/mean_z2 and ln2/c.
  const double m1 = scenario.mean_z1, m2 = scenario.mean_z2;
  double base = 0.0;
  switch (i) {
  case Message::Confidential1:
    base = kLn2 / m1;
    break;
  case Message::Confidential2:
    base = kLn2 / m2;
    break;
  case Message::Common:
    base = (m1 + m2) / (m1 * m2) * kLn2;
    break;
  }
  return base * mmpp_penalty(source, theta);
}

double wideband_slope_from_moments(const SourceModel &source, double theta,
                                   const LowSnrMoments &m) {
  validate(source);
  check_theta(theta);
  const double k = theta / kLn2;
  const double mean_sq = m.mean_fdot * m.mean_fdot;
  const double denom =
      source_burstiness(source) * k * mean_sq + k * m.var_fdot() - m.mean_fddot;
  if (!(mean_sq > 0.0) || !(denom > 0.0))
    throw DomainError("wideband slope undefined: E{fdot} = " + std::to_string(m.mean_fdot) +
                      ", denominator = " + std::to_string(denom));
  return 2.0 * mean_sq / denom / mmpp_penalty(source, theta);
}

double wideband_slope_closed_form(const SourceModel &source, Message i, double theta,
                                  const FadingScenario &scenario, const PowerSplit &split,
                                  const ExpectationMethod &method) {
  require_power(i, split);
  return wideband_slope_from_moments(source, theta, low_snr_moments(i, scenario, split, method));
}

double wideband_slope_shortcut(const SourceModel &source, Message i, double theta,
                               const FadingScenario &scenario, const PowerSplit &split) {
  validate(source);
  check_theta(theta);
  scenario.validate();
  split.validate();
  require_power(i, split);
  if (!scenario.independent_exponential() || scenario.mean_z1 != 1.0)
    throw ConfigurationError(
        "slope shortcuts need independent exponential fading with mean_z1 = 1");
  const double k = theta / kLn2;
  const double b = source_burstiness(source);
  const double gamma = scenario.mean_z2;
  double denom = 0.0;
  switch (i) {
  case Message::Confidential1:
    denom = k * (1.0 + 2.0 * gamma + b) + 4.0 * gamma + 2.0;
    break;
  case Message::Confidential2:
    denom = k * (1.0 + 2.0 / gamma + b) + 4.0 / gamma + 2.0;
    break;
  case Message::Common: {
    if (split.delta1 != split.delta2)
      throw ConfigurationError("common-stream slope shortcut needs delta1 = delta2");
    const double d = split.delta1;
    denom = k * (1.0 + b) + 2.0 * (1.0 + d) / (1.0 - d);
    break;
  }
  }
  return 2.0 / denom / mmpp_penalty(source, theta);
}

double g_derivative_at_zero(Message i, double theta, const FadingScenario &scenario,
                            const PowerSplit &split, const ExpectationMethod &method) {
  check_theta(theta);
  return -theta / kLn2 * low_snr_moments(i, scenario, split, method).mean_fdot;
}

std::vector<EnergyPoint> energy_curve(const SourceModel &source, Message i, double theta,
                                      const FadingScenario &scenario, const PowerSplit &split,
                                      const ExpectationMethod &method,
                                      const std::vector<double> &snr_grid) {
  validate(source);
  check_theta(theta);
  split.validate();
  require_power(i, split);
  if (snr_grid.empty())
    throw ParameterError("snr grid is empty");
  for (std::size_t k = 0; k < snr_grid.size(); ++k) {
    if (!(snr_grid[k] > 0.0) || !std::isfinite(snr_grid[k]))
      throw ParameterError("snr grid values must be positive, got " +
                           std::to_string(snr_grid[k]));
    if (k > 0 && !(snr_grid[k] > snr_grid[k - 1]))
      throw ParameterError("snr grid must be strictly ascending");
  }
  const double weight = low_snr_moments(i, scenario, split, method).weight;
  std::vector<EnergyPoint> out;
  out.reserve(snr_grid.size());
  for (double snr : snr_grid) {
    EnergyPoint p;
    p.snr = snr;
    p.r_avg = max_avg_arrival_rate(source, i, snr, theta, scenario, split, method);
    p.eb_n0 = p.r_avg > 0.0 ? weight * snr / p.r_avg : std::numeric_limits<double>::infinity();
    p.eb_n0_db = linear_to_db(p.eb_n0);
    out.push_back(p);
  }
  return out;
}

std::vector<double> low_snr_fit_grid() { return {1e-4, 2e-4, 4e-4, 8e-4}; }

LowSnrMetrics fit_low_snr_metrics(const std::vector<std::pair<double, double>> &curve,
                                  double numerator_weight) {
  if (curve.size() < 4)
    throw FitError("low-SNR fit needs at least 4 points, got " + std::to_string(curve.size()));
  if (!(numerator_weight > 0.0))
    throw FitError("numerator weight must be positive");
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const auto [snr, r] = curve[k];
    if (!(snr > 0.0) || !(r > 0.0) || !std::isfinite(r))
      throw FitError("low-SNR fit needs positive snr and throughput; point " + std::to_string(k) +
                     " has snr " + std::to_string(snr) + ", r_avg " + std::to_string(r));
    if (k > 0 && (!(snr > curve[k - 1].first) || !(r > curve[k - 1].second)))
      throw FitError("throughput curve is not increasing at point " + std::to_string(k));
  }

  // With weights 1/snr^2 the fit is ordinary least squares of r/snr on snr.
  const Eigen::Index n = static_cast<Eigen::Index>(curve.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd y(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto [snr, r] = curve[static_cast<std::size_t>(k)];
    design(k, 0) = 1.0;
    design(k, 1) = snr;
    y[k] = r / snr;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  const double c1 = coef[0], c2 = coef[1];
  if (!(c1 > 0.0))
    throw FitError("fitted first derivative is not positive: " + std::to_string(c1));
  const double residual = (design * coef - y).cwiseAbs().maxCoeff() / c1;
  if (residual > 1e-3) {
    std::ostringstream msg;
    msg << "low-SNR fit residual " << residual << " exceeds 1e-3 (c1 = " << c1
        << ", c2 = " << c2 << "); the curve is too noisy, use more samples or quadrature";
    throw FitError(msg.str());
  }

  LowSnrMetrics out;
  out.method = MetricsMethod::NumericFit;
  out.ebn0_min = numerator_weight / c1;
  // Curvature indistinguishable from zero at double precision.
  if (c2 * curve.back().first >= -1e-9 * c1) {
    out.slope_s0 = std::numeric_limits<double>::infinity();
    out.degenerate = true;
  } else {
    out.slope_s0 = -c1 * c1 * kLn2 / c2;
  }
  return out;
}

LowSnrMetrics numeric_low_snr_metrics(const SourceModel &source, Message i, double theta,
                                      const FadingScenario &scenario, const PowerSplit &split,
                                      const ExpectationMethod &method) {
  require_power(i, split);
  const double weight = low_snr_moments(i, scenario, split, method).weight;
  std::vector<std::pair<double, double>> curve;
  for (double snr : low_snr_fit_grid())
    curve.emplace_back(snr, max_avg_arrival_rate(source, i, snr, theta, scenario, split, method));
  return fit_low_snr_metrics(curve, weight);
}

} // namespace secqos
