// SPDX-License-Identifier: Apache-2.0
//
// Block-by-block buffer simulation. Each block the source emits A bits, the
// channel serves S bits drawn from a fresh fading sample and the backlog
// follows Q <- max(Q + A - S, 0). Bits are real valued; the buffer is
// unbounded.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

#include "secqos/channel.hpp"
#include "secqos/expectation.hpp"
#include "secqos/nocsi.hpp"
#include "secqos/sources.hpp"

namespace secqos {

/// Service of one message stream with perfect transmitter CSI.
struct PerfectCsiService {
  Message message = Message::Confidential1;
  double snr = 1.0;
  FadingScenario scenario;
  PowerSplit split;
  /// Used only to calibrate the ON rate; the simulation samples the fading.
  ExpectationMethod method = MonteCarlo{};
};

/// Fixed-rate service without transmitter CSI.
struct NoCsiService {
  double snr = 1.0;
  FixedRatePolicy policy = FixedRatePolicy::coefficient(1.0);
  NoCsiScenario scenario;
};

using ServiceModel = std::variant<PerfectCsiService, NoCsiService>;

inline constexpr std::int64_t kMinSimHorizon = 1'000'000;

struct SimConfig {
  SourceModel source = ConstantRate{};
  ServiceModel service = PerfectCsiService{};
  std::int64_t horizon = 10'000'000; ///< blocks
  std::uint64_t seed = 1;
  std::vector<double> thresholds;    ///< queue lengths in bits, ascending
  /// Virtual-delay probe: every `delay_probe_interval` blocks the backlog is
  /// tagged and the number of blocks until the offered service drains it is
  /// recorded. Empty grid disables the probe.
  std::vector<double> delay_grid; ///< blocks, ascending
  std::int64_t delay_probe_interval = 100;

  void validate() const;
};

struct SimReport {
  std::int64_t blocks = 0;
  std::vector<double> thresholds;
  std::vector<std::int64_t> exceed_counts; ///< blocks with Q >= q
  std::int64_t nonempty_count = 0;         ///< blocks with Q > 0
  double arrived_bits = 0.0;
  double offered_service_bits = 0.0;
  std::vector<double> delay_grid;
  std::vector<std::int64_t> delay_counts; ///< probes with D >= d
  std::int64_t delay_probes = 0;

  std::vector<double> overflow_prob() const;
  double sigma_nonempty() const;
  std::vector<double> delay_tail() const;
  double mean_arrival_rate() const;
  double mean_service_rate() const;
};

/// ON-state rate r* = r*_avg / P_on supported by `service` at exponent theta.
double calibrate_on_rate(const SourceModel &source, const ServiceModel &service, double theta);

SimReport run_buffer_sim(const SimConfig &config, double r_on);

/// Splits the horizon over `replicas` independent runs (substreams of the
/// seed), runs them concurrently and merges the tallies in replica order.
SimReport run_buffer_sim_replicas(const SimConfig &config, double r_on, int replicas);

/// Adds the tallies of two reports over the same thresholds and delay grid.
SimReport merge(const SimReport &a, const SimReport &b);

struct ExponentFit {
  double theta_sim = 0.0;
  double theta_std_error = 0.0; ///< from the weighted residuals; ignores their correlation
  double intercept = 0.0; ///< estimate of ln(sigma)
  double residual = 0.0;  ///< root mean square of the ln-probability residuals
  std::size_t first = 0;  ///< threshold index range used, [first, last)
  std::size_t last = 0;
};

/// Thresholds with at least 100 exceedances, minus the smallest 20% of them.
/// Throws RangeError when fewer than 4 remain.
std::pair<std::size_t, std::size_t> default_fit_range(const SimReport &report);

/// Count-weighted least-squares line through (q, ln Pr{Q >= q}) over thresholds
/// [first, last). Throws RangeError if fewer than 4 thresholds are given or
/// any of them has no exceedances.
ExponentFit fit_qos_exponent(const SimReport &report, std::size_t first, std::size_t last);
ExponentFit fit_qos_exponent(const SimReport &report);

/// sigma exp(-theta a(theta, r_on) d) for each d.
std::vector<double> predict_delay_tail(const SourceModel &source, double r_on, double theta,
                                       const std::vector<double> &d_grid, double sigma);

/// QoS exponent needed for Pr{Q >= q} ~ sigma e^{-theta q} to equal epsilon:
/// ln(sigma / epsilon) / q.
double exponent_for_overflow_target(double sigma, double q, double epsilon);

/// `points` evenly spaced thresholds on (0, span / theta].
std::vector<double> default_thresholds(double theta, int points = 40, double span = 2.0);

/// Columns q, count, prob, ln_prob.
void write_report_csv(std::ostream &out, const SimReport &report);

} // namespace secqos
