// SPDX-License-Identifier: Apache-2.0
//
// Two-state (ON/OFF) Markovian traffic models and their effective bandwidths.
//
// Time is measured in fading blocks: discrete chains move once per block and
// continuous-time chains have their rates expressed in 1/block. Rates r are in
// bits/block. In the ON state a Markov or fluid source emits exactly r per
// unit time; an MMPP source emits a Poisson number of bits with mean r.
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "secqos/random.hpp"

namespace secqos {

/// Emits r bits every block.
struct ConstantRate {};

/// Discrete-time ON/OFF chain. p11 = Pr{stay OFF}, p22 = Pr{stay ON}.
struct OnOffDiscreteMarkov {
  double p11 = 0.0;
  double p22 = 1.0;
};

/// Continuous-time ON/OFF chain with generator [[-alpha, alpha], [beta, -beta]]:
/// alpha is the OFF->ON rate and beta the ON->OFF rate.
struct OnOffMarkovFluid {
  double alpha = 1.0;
  double beta = 0.0;
};

/// Discrete chain as in OnOffDiscreteMarkov, Poisson(r) arrivals while ON.
struct OnOffDiscreteMmpp {
  double p11 = 0.0;
  double p22 = 1.0;
};

/// Continuous chain as in OnOffMarkovFluid, Poisson arrivals of intensity r while ON.
struct OnOffContinuousMmpp {
  double alpha = 1.0;
  double beta = 0.0;
};

using SourceModel = std::variant<ConstantRate, OnOffDiscreteMarkov, OnOffMarkovFluid,
                                 OnOffDiscreteMmpp, OnOffContinuousMmpp>;

/// Throws ParameterError when the chain parameters are out of range or the
/// chain can never reach the ON state (p11 = 1, alpha = 0).
void validate(const SourceModel &model);

bool is_mmpp(const SourceModel &model);

/// The fixed-rate chain with the same transition structure as an MMPP source
/// (identity for non-MMPP models).
SourceModel markov_counterpart(const SourceModel &model);

std::string describe(const SourceModel &model);

/// Minimum constant service rate that keeps the buffer tail decaying at rate
/// theta, a(theta, r). Evaluated in the log domain; large theta*r does not
/// overflow. Throws DomainError if the result is not finite.
double effective_bandwidth(const SourceModel &model, double theta, double r);

/// Stationary probability of the ON state.
double on_probability(const SourceModel &model);

/// P_on * r.
double mean_rate(const SourceModel &model, double r);

/// Burstiness of a discrete ON/OFF chain; 0 for an always-ON chain.
double burstiness_eta(double p11, double p22);

/// Burstiness of a fluid ON/OFF chain; 0 when beta = 0.
double burstiness_zeta(double alpha, double beta);

/// Per-block arrival sampler. Starts from the stationary distribution.
/// Continuous-time chains are simulated exactly inside each block so the
/// block aggregates are samples of the continuous process.
class ArrivalGenerator {
public:
  ArrivalGenerator(const SourceModel &model, double r, Rng &rng);

  /// Bits arriving in the next block; advances the chain.
  double next(Rng &rng);

  /// Whether the chain is currently in the ON state.
  bool on() const { return on_; }

private:
  double on_time_in_block(Rng &rng);

  SourceModel model_;
  double r_;
  bool on_ = true;
};

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

struct OracleOptions {
  std::int64_t horizon = 2000;  ///< blocks per path, >= 1000
  std::int64_t paths = 100000;  ///< total population, >= 1e4
  std::uint64_t seed = 1;
  int groups = 10;              ///< independent populations used for the error bar
  double burn_in_fraction = 0.1;
  int threads = 0;
};

/// Monte Carlo estimate of (1/(theta t)) ln E{exp(theta A(t))} obtained by
/// simulating the source. A plain average of exp(theta A(t)) is dominated by
/// paths too rare to sample at t ~ 1e3, so the estimator runs a resampled
/// population (cloning): every block each path is weighted by
/// exp(theta * arrivals), the log of the mean weight is accumulated and the
/// population is resampled in proportion to the weights. Increments after the
/// burn-in estimate the asymptotic rate. The error bar comes from `groups`
/// independent populations, each on its own substream of `seed`, so the
/// result does not depend on the worker count.
McEstimate effective_bandwidth_mc_oracle(const SourceModel &model, double theta, double r,
                                         const OracleOptions &options = {});

} // namespace secqos
