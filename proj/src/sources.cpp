// SPDX-License-Identifier: Apache-2.0
#include "secqos/sources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "secqos/errors.hpp"

namespace secqos {

namespace {

template <class... Ts> struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void check_probability(double p, const char *name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
}

void check_discrete(double p11, double p22) {
  check_probability(p11, "p11");
  check_probability(p22, "p22");
  if (p11 == 1.0)
    throw ParameterError("p11 = 1 makes OFF absorbing; the source never turns ON");
}

void check_fluid(double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError("alpha must be positive and finite, got " + std::to_string(alpha));
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw ParameterError("beta must be nonnegative and finite, got " + std::to_string(beta));
}

// ln of the spectral radius of J * diag(1, e^x) for the two-state discrete
// chain. x >= 0 is the per-block log moment generating function in the ON
// state.
double discrete_log_spectral_radius(double p11, double p22, double x) {
  if (x == 0.0)
    return 0.0;
  if (x <= 30.0) {
    // Shift to mu = lambda - 1, the positive root of
    // mu^2 + b mu - c = 0 with b = 2 - trace, c = (1 - p11)(e^x - 1).
    const double em = std::expm1(x);
    const double b = (1.0 - p11) + (1.0 - p22) - p22 * em;
    const double c = (1.0 - p11) * em;
    const double disc = std::sqrt(b * b + 4.0 * c);
    const double mu = b > 0.0 ? 2.0 * c / (b + disc) : 0.5 * (disc - b);
    return std::log1p(mu);
  }
  const double k = p11 + p22 - 1.0;
  if (p22 > 0.0) {
    const double ex = std::exp(-x);
    const double q = p11 * ex + p22;
    const double inner = 0.5 * (q + std::sqrt(std::max(q * q - 4.0 * k * ex, 0.0)));
    return x + std::log(inner);
  }
  // p22 = 0: lambda^2 - p11 lambda - (1 - p11) e^x = 0, factor e^{x/2}.
  const double eh = std::exp(-0.5 * x);
  return 0.5 * x + std::log(0.5 * (p11 * eh + std::sqrt(p11 * p11 * eh * eh + 4.0 * (1.0 - p11))));
}

// Largest eigenvalue of G + diag(0, x) for the fluid chain.
double fluid_top_eigenvalue(double alpha, double beta, double x) {
  if (x == 0.0)
    return 0.0;
  const double d = x - (alpha + beta);
  const double root = std::hypot(d, 2.0 * std::sqrt(alpha * x));
  return d >= 0.0 ? 0.5 * (d + root) : 2.0 * alpha * x / (root - d);
}

void check_theta_r(double theta, double r) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw ParameterError("theta must be positive and finite, got " + std::to_string(theta));
  if (!(r >= 0.0) || !std::isfinite(r))
    throw ParameterError("r must be nonnegative and finite, got " + std::to_string(r));
}

double tilt_exponent(double theta, double r, bool poisson) {
  const double x = poisson ? r * std::expm1(theta) : theta * r;
  if (!std::isfinite(x)) {
    std::ostringstream os;
    os << "effective bandwidth exponent is not finite (theta=" << theta << ", r=" << r << ")";
    throw DomainError(os.str());
  }
  return x;
}

double finite_or_throw(double value, double exponent) {
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "effective bandwidth not finite for exponent " << exponent;
    throw DomainError(os.str());
  }
  return value;
}

double exp_sample(Rng &rng, double rate) {
  std::exponential_distribution<double> d(rate);
  return d(rng);
}

double poisson_sample(Rng &rng, double mean) {
  if (mean <= 0.0)
    return 0.0;
  std::poisson_distribution<long long> d(mean);
  return static_cast<double>(d(rng));
}

double uniform(Rng &rng) { return std::generate_canonical<double, 53>(rng); }

// Time spent ON during one block of a continuous chain, advancing `on`.
double fluid_on_time(double alpha, double beta, bool &on, Rng &rng) {
  double remaining = 1.0;
  double on_time = 0.0;
  for (;;) {
    const double rate = on ? beta : alpha;
    if (rate <= 0.0) {
      if (on)
        on_time += remaining;
      return on_time;
    }
    const double hold = exp_sample(rng, rate);
    if (hold >= remaining) {
      if (on)
        on_time += remaining;
      return on_time;
    }
    if (on)
      on_time += hold;
    remaining -= hold;
    on = !on;
  }
}

void discrete_step(double p11, double p22, bool &on, Rng &rng) {
  const double u = uniform(rng);
  on = on ? (u < p22) : (u >= p11);
}

// Arrivals of one block followed by the state transition.
double step_block(const SourceModel &model, double r, bool &on, Rng &rng) {
  return std::visit(
      overloaded{
          [&](const ConstantRate &) { return r; },
          [&](const OnOffDiscreteMarkov &m) {
            const double a = on ? r : 0.0;
            discrete_step(m.p11, m.p22, on, rng);
            return a;
          },
          [&](const OnOffDiscreteMmpp &m) {
            const double a = on ? poisson_sample(rng, r) : 0.0;
            discrete_step(m.p11, m.p22, on, rng);
            return a;
          },
          [&](const OnOffMarkovFluid &m) { return r * fluid_on_time(m.alpha, m.beta, on, rng); },
          [&](const OnOffContinuousMmpp &m) {
            return poisson_sample(rng, r * fluid_on_time(m.alpha, m.beta, on, rng));
          },
      },
      model);
}

} // namespace

void validate(const SourceModel &model) {
  std::visit(overloaded{
                 [](const ConstantRate &) {},
                 [](const OnOffDiscreteMarkov &m) { check_discrete(m.p11, m.p22); },
                 [](const OnOffDiscreteMmpp &m) { check_discrete(m.p11, m.p22); },
                 [](const OnOffMarkovFluid &m) { check_fluid(m.alpha, m.beta); },
                 [](const OnOffContinuousMmpp &m) { check_fluid(m.alpha, m.beta); },
             },
             model);
}

bool is_mmpp(const SourceModel &model) {
  return std::holds_alternative<OnOffDiscreteMmpp>(model) ||
         std::holds_alternative<OnOffContinuousMmpp>(model);
}

SourceModel markov_counterpart(const SourceModel &model) {
  if (const auto *m = std::get_if<OnOffDiscreteMmpp>(&model))
    return OnOffDiscreteMarkov{m->p11, m->p22};
  if (const auto *m = std::get_if<OnOffContinuousMmpp>(&model))
    return OnOffMarkovFluid{m->alpha, m->beta};
  return model;
}

std::string describe(const SourceModel &model) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ConstantRate &) { os << "constant"; },
                 [&](const OnOffDiscreteMarkov &m) {
                   os << "discrete_markov(p11=" << m.p11 << ",p22=" << m.p22 << ")";
                 },
                 [&](const OnOffDiscreteMmpp &m) {
                   os << "discrete_mmpp(p11=" << m.p11 << ",p22=" << m.p22 << ")";
                 },
                 [&](const OnOffMarkovFluid &m) {
                   os << "markov_fluid(alpha=" << m.alpha << ",beta=" << m.beta << ")";
                 },
                 [&](const OnOffContinuousMmpp &m) {
                   os << "continuous_mmpp(alpha=" << m.alpha << ",beta=" << m.beta << ")";
                 },
             },
             model);
  return os.str();
}

double effective_bandwidth(const SourceModel &model, double theta, double r) {
  check_theta_r(theta, r);
  validate(model);
  return std::visit(
      overloaded{
          [&](const ConstantRate &) { return r; },
          [&](const OnOffDiscreteMarkov &m) {
            const double x = tilt_exponent(theta, r, false);
            return finite_or_throw(discrete_log_spectral_radius(m.p11, m.p22, x) / theta, x);
          },
          [&](const OnOffDiscreteMmpp &m) {
            const double x = tilt_exponent(theta, r, true);
            return finite_or_throw(discrete_log_spectral_radius(m.p11, m.p22, x) / theta, x);
          },
          [&](const OnOffMarkovFluid &m) {
            const double x = tilt_exponent(theta, r, false);
            return finite_or_throw(fluid_top_eigenvalue(m.alpha, m.beta, x) / theta, x);
          },
          [&](const OnOffContinuousMmpp &m) {
            const double x = tilt_exponent(theta, r, true);
            return finite_or_throw(fluid_top_eigenvalue(m.alpha, m.beta, x) / theta, x);
          },
      },
      model);
}

double on_probability(const SourceModel &model) {
  validate(model);
  return std::visit(overloaded{
                        [](const ConstantRate &) { return 1.0; },
                        [](const OnOffDiscreteMarkov &m) {
                          return (1.0 - m.p11) / (2.0 - m.p11 - m.p22);
                        },
                        [](const OnOffDiscreteMmpp &m) {
                          return (1.0 - m.p11) / (2.0 - m.p11 - m.p22);
                        },
                        [](const OnOffMarkovFluid &m) { return m.alpha / (m.alpha + m.beta); },
                        [](const OnOffContinuousMmpp &m) {
                          return m.alpha / (m.alpha + m.beta);
                        },
                    },
                    model);
}

double mean_rate(const SourceModel &model, double r) {
  if (!(r >= 0.0))
    throw ParameterError("r must be nonnegative");
  return on_probability(model) * r;
}

double burstiness_eta(double p11, double p22) {
  check_discrete(p11, p22);
  return (1.0 - p22) * (p11 + p22) / ((1.0 - p11) * (2.0 - p11 - p22));
}

double burstiness_zeta(double alpha, double beta) {
  check_fluid(alpha, beta);
  return 2.0 * beta / (alpha * (alpha + beta));
}

ArrivalGenerator::ArrivalGenerator(const SourceModel &model, double r, Rng &rng)
    : model_(model), r_(r) {
  validate(model_);
  if (!(r >= 0.0) || !std::isfinite(r))
    throw ParameterError("ON rate must be nonnegative and finite");
  on_ = uniform(rng) < on_probability(model_);
}

double ArrivalGenerator::next(Rng &rng) { return step_block(model_, r_, on_, rng); }

McEstimate effective_bandwidth_mc_oracle(const SourceModel &model, double theta, double r,
                                         const OracleOptions &options) {
  check_theta_r(theta, r);
  validate(model);
  if (options.horizon < 1000)
    throw ParameterError("oracle horizon must be at least 1000 blocks");
  if (options.paths < 10000)
    throw ParameterError("oracle needs at least 1e4 paths");
  if (options.groups < 2)
    throw ParameterError("oracle needs at least two groups for an error bar");
  if (std::holds_alternative<ConstantRate>(model))
    return {r, 0.0};

  const int groups = options.groups;
  const auto population = static_cast<std::size_t>(options.paths / groups);
  const std::int64_t burn =
      std::clamp<std::int64_t>(static_cast<std::int64_t>(options.burn_in_fraction *
                                                         static_cast<double>(options.horizon)),
                               0, options.horizon - 1);
  const double pon = on_probability(model);

  std::vector<double> estimates(static_cast<std::size_t>(groups));
  parallel_for(
      groups,
      [&](std::int64_t g) {
        Rng rng = make_stream(options.seed, static_cast<std::uint64_t>(g));
        std::vector<char> on(population), next_on(population);
        std::vector<double> logw(population), cumw(population);
        for (auto &s : on)
          s = uniform(rng) < pon;

        double acc = 0.0;
        std::int64_t used = 0;
        for (std::int64_t k = 0; k < options.horizon; ++k) {
          double top = -std::numeric_limits<double>::infinity();
          for (std::size_t i = 0; i < population; ++i) {
            bool state = on[i] != 0;
            logw[i] = theta * step_block(model, r, state, rng);
            on[i] = state;
            top = std::max(top, logw[i]);
          }
          double total = 0.0;
          for (std::size_t i = 0; i < population; ++i) {
            total += std::exp(logw[i] - top);
            cumw[i] = total;
          }
          if (k >= burn) {
            acc += top + std::log(total / static_cast<double>(population));
            ++used;
          }
          // Systematic resampling.
          const double step = total / static_cast<double>(population);
          double u = uniform(rng) * step;
          std::size_t j = 0;
          for (std::size_t i = 0; i < population; ++i, u += step) {
            while (j + 1 < population && cumw[j] < u)
              ++j;
            next_on[i] = on[j];
          }
          on.swap(next_on);
        }
        estimates[static_cast<std::size_t>(g)] = acc / (static_cast<double>(used) * theta);
      },
      options.threads);

  double mean = 0.0;
  for (double e : estimates)
    mean += e;
  mean /= groups;
  double ss = 0.0;
  for (double e : estimates)
    ss += (e - mean) * (e - mean);
  const double sd = std::sqrt(ss / (groups - 1));
  return {mean, sd / std::sqrt(static_cast<double>(groups))};
}

} // namespace secqos
