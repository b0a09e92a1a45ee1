// SPDX-License-Identifier: Apache-2.0
//
// Secure transmission at a fixed rate lambda when the transmitter knows only
// the fading statistics. A block delivers lambda bits when lambda is below the
// instantaneous secrecy capacity of user 1 against user 2 (the secure ON
// state) and nothing otherwise. Only the confidential stream to user 1 is
// modelled; the fading is independent exponential with means 1 and gamma.
#pragma once

#include <cmath>
#include <numbers>

#include "secqos/channel.hpp"
#include "secqos/energy.hpp"
#include "secqos/expectation.hpp"
#include "secqos/qos.hpp"
#include "secqos/sources.hpp"

namespace secqos {

/// Fixed transmission rate. Either an explicit lambda (bits/block) or the
/// low-SNR rule lambda(snr) = a snr / ln2. The second-order term of the
/// rule is taken as zero; it does not affect the low-SNR metrics at a = 1.
class FixedRatePolicy {
public:
  static FixedRatePolicy explicit_rate(double lambda);
  static FixedRatePolicy coefficient(double a);

  bool is_coefficient() const { return coefficient_; }
  double value() const { return value_; }
  double lambda(double snr) const;
  void validate() const;

private:
  FixedRatePolicy(bool coefficient, double value) : coefficient_(coefficient), value_(value) {}

  bool coefficient_ = false;
  double value_ = 0.0;
};

struct NoCsiScenario {
  double gamma = 1.0; ///< mean of z2; z1 has unit mean

  void validate() const;
  FadingScenario fading() const;
};

/// Whether a block with fading `s` is in the secure ON state:
/// z1 > 2^lambda z2 + (2^lambda - 1)/snr.
inline bool nocsi_secure_on(const FadingSample &s, double snr, double lambda) {
  const double growth = std::expm1(lambda * std::numbers::ln2);
  return s.z1 > (1.0 + growth) * s.z2 + growth / snr;
}

/// Pr{secure ON} = exp(-(2^lambda - 1)/snr) / (gamma 2^lambda + 1).
double secure_on_probability(double snr, double lambda, const NoCsiScenario &scenario);

/// Pr{secure ON} for any fading law, estimated with `method`.
double secure_on_probability(double snr, double lambda, const FadingScenario &scenario,
                             const ExpectationMethod &method);

/// g(snr) = 1 - Pr{ON} (1 - exp(-theta lambda)).
GValue nocsi_g_value(double snr, double theta, const FixedRatePolicy &policy,
                     const NoCsiScenario &scenario);

double effective_capacity_nocsi(double snr, double theta, const FixedRatePolicy &policy,
                                const NoCsiScenario &scenario);

/// Maximum average arrival rate. Supports constant, discrete Markov and fluid
/// sources; MMPP sources throw UnsupportedError.
double nocsi_throughput(const SourceModel &source, double snr, double theta,
                        const FixedRatePolicy &policy, const NoCsiScenario &scenario);

/// Closed-form metrics under the rule lambda = snr/ln2 (a = 1):
///   Eb/N0_min = e (gamma + 1) ln2
///   S0 = 1 / [theta (b - 1)/(2 ln2) + theta e (gamma+1)/(2 ln2) + e gamma + e (gamma+1)/2]
/// with b = eta (discrete Markov), zeta (fluid) or 0 (constant rate).
LowSnrMetrics nocsi_low_snr_metrics(const SourceModel &source, double theta, double gamma);

/// Eb/N0 at the low-SNR limit for the rule lambda = a snr/ln2:
/// (gamma + 1) ln2 e^a / a. Minimised at a = 1.
double nocsi_ebn0_for_coefficient(double a, double gamma);

/// Energy per bit lost to the missing channel knowledge, [e (gamma+1) - 1] ln2.
double nocsi_ebn0_excess(double gamma);

/// dg/dsnr at snr = 0 for the rule lambda = a snr/ln2:
/// -e^{-a} theta a / ((gamma + 1) ln2).
double nocsi_g_derivative_at_zero(double theta, double a, double gamma);

/// Numeric fit of the throughput curve on the default low-SNR stencil, with
/// all power on the confidential stream (numerator weight 1).
LowSnrMetrics nocsi_numeric_metrics(const SourceModel &source, double theta,
                                    const FixedRatePolicy &policy, const NoCsiScenario &scenario);

} // namespace secqos
