// SPDX-License-Identifier: Apache-2.0
#include "secqos/channel.hpp"

#include <algorithm>
#include <string>

#include "secqos/errors.hpp"

namespace secqos {

void FadingScenario::validate() const {
  if (!(mean_z1 > 0.0) || !std::isfinite(mean_z1))
    throw ParameterError("mean_z1 must be positive, got " + std::to_string(mean_z1));
  if (!(mean_z2 > 0.0) || !std::isfinite(mean_z2))
    throw ParameterError("mean_z2 must be positive, got " + std::to_string(mean_z2));
  if (!(power_correlation >= 0.0 && power_correlation < 1.0))
    throw ParameterError("power correlation must lie in [0, 1), got " +
                         std::to_string(power_correlation));
}

bool FadingScenario::independent_exponential() const {
  return family == FadingFamily::Rayleigh && power_correlation == 0.0;
}

void PowerSplit::validate() const {
  if (!(delta1 >= 0.0 && delta1 <= 1.0))
    throw ParameterError("delta1 must lie in [0, 1], got " + std::to_string(delta1));
  if (!(delta2 >= 0.0 && delta2 <= 1.0))
    throw ParameterError("delta2 must lie in [0, 1], got " + std::to_string(delta2));
}

RealizationRates instantaneous_rates(const FadingSample &sample, double snr,
                                     const PowerSplit &split) {
  RealizationRates out;
  out.region = classify_region(sample);
  out.r0 = message_rate(Message::Common, sample, snr, split);
  out.r1 = message_rate(Message::Confidential1, sample, snr, split);
  out.r2 = message_rate(Message::Confidential2, sample, snr, split);
  return out;
}

double secrecy_rate_generic(double z_main, double z_eve, double snr) {
  const double nats = std::log1p(snr * z_main) - std::log1p(snr * z_eve);
  return std::max(nats, 0.0) / std::numbers::ln2;
}

FadingSampler::FadingSampler(const FadingScenario &scenario)
    : half_mean1_(0.5 * scenario.mean_z1), half_mean2_(0.5 * scenario.mean_z2),
      gain_weight_(std::sqrt(scenario.power_correlation)),
      noise_weight_(std::sqrt(1.0 - scenario.power_correlation)) {
  scenario.validate();
}

FadingSample sample_fading(const FadingScenario &scenario, Rng &rng) {
  FadingSampler sampler(scenario);
  return sampler(rng);
}

} // namespace secqos
