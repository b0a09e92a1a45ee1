// SPDX-License-Identifier: Apache-2.0
//
// Energy efficiency in the low-SNR regime: minimum energy per bit and
// wideband slope of each message stream, in closed form and estimated
// numerically from the throughput curve.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "secqos/channel.hpp"
#include "secqos/expectation.hpp"
#include "secqos/sources.hpp"

namespace secqos {

/// First and second snr-derivatives at snr = 0 of the per-block rate in
/// nats, f_i = R_i ln 2.
struct FDerivatives {
  double fdot = 0.0;
  double fddot = 0.0;
};

FDerivatives f_derivatives(const FadingSample &sample, const PowerSplit &split, Message i);

/// Fading averages that determine the low-SNR behaviour of stream i.
struct LowSnrMoments {
  double pr_gamma1 = 0.0;
  double weight = 0.0;       ///< power fraction spent on the stream, averaged over regions
  double mean_fdot = 0.0;    ///< E{fdot}
  double mean_fdot_sq = 0.0; ///< E{fdot^2}
  double mean_fddot = 0.0;   ///< E{fddot}

  double var_fdot() const { return mean_fdot_sq - mean_fdot * mean_fdot; }
};

/// Averages for independent exponential fading, in closed form.
LowSnrMoments low_snr_moments_analytic(Message i, const FadingScenario &scenario,
                                       const PowerSplit &split);

/// Averages computed with `method` (any fading law).
LowSnrMoments low_snr_moments_expected(Message i, const FadingScenario &scenario,
                                       const PowerSplit &split, const ExpectationMethod &method);

/// Closed-form averages when the fading is independent exponential,
/// `method` otherwise.
LowSnrMoments low_snr_moments(Message i, const FadingScenario &scenario, const PowerSplit &split,
                              const ExpectationMethod &method);

/// Power fraction in the energy-per-bit numerator: delta_i Pr(Gamma_i) for
/// a confidential stream, (1-delta1) Pr(Gamma1) + (1-delta2) Pr(Gamma2) for
/// the common stream.
double power_weight(Message i, double pr_gamma1, const PowerSplit &split);

enum class MetricsMethod { ClosedForm, NumericFit };

struct LowSnrMetrics {
  double ebn0_min = 0.0; ///< linear
  double slope_s0 = 0.0; ///< bits/s/Hz per 3 dB
  MetricsMethod method = MetricsMethod::ClosedForm;
  bool degenerate = false; ///< zero curvature: slope reported as +inf

  double ebn0_min_db() const;
};

std::string to_string(MetricsMethod method);

double linear_to_db(double linear);

/// Minimum energy per bit. The same for constant, discrete Markov and fluid
/// sources at every theta; MMPP sources pay an extra factor (e^theta - 1)/theta.
double min_ebn0_closed_form(const SourceModel &source, Message i, double theta,
                            const FadingScenario &scenario, const PowerSplit &split,
                            const ExpectationMethod &method);

double min_ebn0_from_moments(const SourceModel &source, double theta, const LowSnrMoments &m);

/// Wideband slope
///   S0 = 2 E{fdot}^2 / [b (theta/ln2) E{fdot}^2 + (theta/ln2) var(fdot) - E{fddot}]
/// with burstiness b = 0, eta or zeta; MMPP sources scale the result by
/// theta / (e^theta - 1).
double wideband_slope_closed_form(const SourceModel &source, Message i, double theta,
                                  const FadingScenario &scenario, const PowerSplit &split,
                                  const ExpectationMethod &method);

double wideband_slope_from_moments(const SourceModel &source, double theta,
                                   const LowSnrMoments &m);

/// Simplified slopes for independent exponential fading with mean_z1 = 1 and
/// mean_z2 = gamma:
///   user 1: 2 / [(theta/ln2)(1 + 2 gamma + b) + 4 gamma + 2]
///   user 2: 2 / [(theta/ln2)(1 + 2/gamma + b) + 4/gamma + 2]
///   common (delta1 = delta2 = delta): 2 / [(theta/ln2)(1 + b) + 2 (1+delta)/(1-delta)]
/// Throws ConfigurationError outside that setting.
double wideband_slope_shortcut(const SourceModel &source, Message i, double theta,
                               const FadingScenario &scenario, const PowerSplit &split);

/// Slope of g(snr) = E{exp(-theta R_i)} at snr = 0: -(theta/ln2) E{fdot}.
double g_derivative_at_zero(Message i, double theta, const FadingScenario &scenario,
                            const PowerSplit &split, const ExpectationMethod &method);

struct EnergyPoint {
  double snr = 0.0;
  double r_avg = 0.0; ///< bits/block
  double eb_n0 = 0.0; ///< linear
  double eb_n0_db = 0.0;
};

/// Throughput and energy per bit on an ascending snr grid. Monte Carlo
/// expectations reuse the same seed at every grid point. Throws
/// ParameterError when the stream carries no power (delta_i = 0 for a
/// confidential stream, delta1 = delta2 = 1 for the common stream).
std::vector<EnergyPoint> energy_curve(const SourceModel &source, Message i, double theta,
                                      const FadingScenario &scenario, const PowerSplit &split,
                                      const ExpectationMethod &method,
                                      const std::vector<double> &snr_grid);

/// Default stencil for the numeric fit: 1e-4 * {1, 2, 4, 8}.
std::vector<double> low_snr_fit_grid();

/// Weighted least-squares fit r_avg ~ c1 snr + c2 snr^2 (weights 1/snr^2)
/// over (snr, r_avg) pairs. Returns ebn0_min = weight / c1 and
/// S0 = -c1^2 ln2 / c2. Throws FitError when there are fewer than 4 points,
/// the curve is not increasing, or the relative fit residual exceeds 1e-3.
LowSnrMetrics fit_low_snr_metrics(const std::vector<std::pair<double, double>> &curve,
                                  double numerator_weight);

/// Numeric fit on the default stencil for a perfect-CSI stream.
LowSnrMetrics numeric_low_snr_metrics(const SourceModel &source, Message i, double theta,
                                      const FadingScenario &scenario, const PowerSplit &split,
                                      const ExpectationMethod &method);

} // namespace secqos
