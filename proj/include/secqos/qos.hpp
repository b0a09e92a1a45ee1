// SPDX-License-Identifier: Apache-2.0
//
// Effective capacity of the common and confidential message streams and the
// maximum average arrival rate each stream can support for a given source.
#pragma once

#include "secqos/channel.hpp"
#include "secqos/expectation.hpp"
#include "secqos/sources.hpp"

namespace secqos {

/// g = E{exp(-theta R)} over the fading law.
struct GValue {
  double value = 1.0;
  double std_error = 0.0;
  /// 1 - g, accumulated as E{1 - exp(-theta R)} so it keeps full relative
  /// precision when g is close to 1.
  double complement = 0.0;
};

GValue g_value(Message i, double snr, double theta, const FadingScenario &scenario,
               const PowerSplit &split, const ExpectationMethod &method);

/// -ln(g) / theta, bits/block.
double effective_capacity(Message i, double snr, double theta, const FadingScenario &scenario,
                          const PowerSplit &split, const ExpectationMethod &method);

/// -ln(1 - complement) / theta.
double effective_capacity_from_g(const GValue &g, double theta);

/// Ergodic service rate E{R_i}, the theta -> 0 limit of the effective capacity.
double mean_service_rate(Message i, double snr, const FadingScenario &scenario,
                         const PowerSplit &split, const ExpectationMethod &method);

/// Largest average arrival rate P_on r* whose effective bandwidth equals the
/// service capacity `capacity` (bits/block) at exponent theta. Closed form per
/// source family.
double throughput_from_capacity(const SourceModel &source, double capacity, double theta);

double max_avg_arrival_rate(const SourceModel &source, Message i, double snr, double theta,
                            const FadingScenario &scenario, const PowerSplit &split,
                            const ExpectationMethod &method);

/// ON-state rate r with a(theta, r) = target, by bracket doubling from [0, 1]
/// and bisection until the bracket cannot shrink further. Throws SolverError
/// when no bracket is found or the final residual exceeds
/// 1e-12 * max(1, target).
double solve_on_rate_bisection(const SourceModel &source, double target_capacity, double theta);

/// theta * a(theta, r_on): decay rate of the delay-violation probability.
double delay_exponent(const SourceModel &source, double theta, double r_on);

} // namespace secqos
