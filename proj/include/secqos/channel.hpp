// SPDX-License-Identifier: Apache-2.0
//
// Two-receiver block-fading broadcast channel carrying one common message and
// one confidential message per receiver. The confidential message of the
// stronger receiver is sent in each block, the other receiver acting as the
// eavesdropper. All rates are in bits per block.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "secqos/random.hpp"

namespace secqos {

enum class Message : int { Common = 0, Confidential1 = 1, Confidential2 = 2 };

enum class FadingFamily { Rayleigh };

/// Statistics of the fading powers z1 = |h1|^2 and z2 = |h2|^2.
struct FadingScenario {
  FadingFamily family = FadingFamily::Rayleigh;
  double mean_z1 = 1.0;
  double mean_z2 = 1.0;           ///< gamma
  double power_correlation = 0.0; ///< rho = corr(z1, z2), in [0, 1)

  void validate() const;
  /// Rayleigh with rho = 0: z1, z2 independent exponentials.
  bool independent_exponential() const;
};

/// Fraction of power on the confidential message in Gamma1 (delta1) and
/// Gamma2 (delta2); the remainder carries the common message.
struct PowerSplit {
  double delta1 = 0.5;
  double delta2 = 0.5;

  void validate() const;
};

struct FadingSample {
  double z1 = 0.0;
  double z2 = 0.0;
};

enum class Region { Gamma1, Gamma2 };

struct RealizationRates {
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  Region region = Region::Gamma1;

  double rate(Message m) const {
    switch (m) {
    case Message::Common:
      return r0;
    case Message::Confidential1:
      return r1;
    case Message::Confidential2:
      return r2;
    }
    return 0.0;
  }
};

/// Gamma1 = {z1 >= z2}; ties go to Gamma1.
inline Region classify_region(const FadingSample &s) {
  return s.z1 >= s.z2 ? Region::Gamma1 : Region::Gamma2;
}

/// Natural-log rate of `m` in one block (f_i = R_i ln 2). Written with log1p
/// so that the low-SNR behaviour survives cancellation.
template <typename Scalar>
Scalar message_rate_nats(Message m, Scalar z1, Scalar z2, Scalar snr, Scalar delta1,
                         Scalar delta2) {
  using std::log1p;
  const bool gamma1 = z1 >= z2;
  switch (m) {
  case Message::Common:
    return gamma1 ? log1p(snr * z2) - log1p(delta1 * snr * z2)
                  : log1p(snr * z1) - log1p(delta2 * snr * z1);
  case Message::Confidential1:
    return gamma1 ? log1p(delta1 * snr * z1) - log1p(delta1 * snr * z2) : Scalar(0);
  case Message::Confidential2:
    return gamma1 ? Scalar(0) : log1p(delta2 * snr * z2) - log1p(delta2 * snr * z1);
  }
  return Scalar(0);
}

inline double message_rate(Message m, const FadingSample &s, double snr, const PowerSplit &split) {
  return message_rate_nats(m, s.z1, s.z2, snr, split.delta1, split.delta2) / std::numbers::ln2;
}

RealizationRates instantaneous_rates(const FadingSample &sample, double snr,
                                     const PowerSplit &split);

/// [log2(1 + snr z_main) - log2(1 + snr z_eve)]^+.
double secrecy_rate_generic(double z_main, double z_eve, double snr);

/// Draws correlated Rayleigh fading powers. The gains are jointly circular
/// complex Gaussian: h1 ~ CN(0, mean_z1) and
///   h2 = sqrt(mean_z2) (sqrt(rho) u1 + sqrt(1 - rho) w),
/// with u1 = h1 / sqrt(mean_z1) and w ~ CN(0, 1) independent. The gain
/// correlation is sqrt(rho), which makes corr(|h1|^2, |h2|^2) = rho.
class FadingSampler {
public:
  explicit FadingSampler(const FadingScenario &scenario);

  FadingSample operator()(Rng &rng) {
    const double a = normal_(rng), b = normal_(rng);
    const double c = normal_(rng), d = normal_(rng);
    const double re2 = gain_weight_ * a + noise_weight_ * c;
    const double im2 = gain_weight_ * b + noise_weight_ * d;
    return {half_mean1_ * (a * a + b * b), half_mean2_ * (re2 * re2 + im2 * im2)};
  }

private:
  std::normal_distribution<double> normal_{0.0, 1.0};
  double half_mean1_;
  double half_mean2_;
  double gain_weight_;
  double noise_weight_;
};

FadingSample sample_fading(const FadingScenario &scenario, Rng &rng);

} // namespace secqos
