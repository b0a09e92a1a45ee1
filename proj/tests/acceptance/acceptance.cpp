// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Detail lines are indented.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "secqos/cli/commands.hpp"
#include "secqos/energy.hpp"
#include "secqos/nocsi.hpp"
#include "secqos/qos.hpp"
#include "secqos/simqueue.hpp"
#include "secqos/sources.hpp"

using namespace secqos;
using std::numbers::ln2;

namespace {

const GaussLaguerre kQuad{128};

struct Check {
  bool ok = true;
  void expect(bool cond, const char *fmt, auto... args) {
    std::printf("    %s ", cond ? "ok  " : "FAIL");
    std::printf(fmt, args...);
    std::printf("\n");
    ok = ok && cond;
  }
};

FadingScenario iid(double gamma) { return {FadingFamily::Rayleigh, 1.0, gamma, 0.0}; }

const char *name(Message m) {
  switch (m) {
  case Message::Common:
    return "common";
  case Message::Confidential1:
    return "user1";
  case Message::Confidential2:
    return "user2";
  }
  return "?";
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool minimum_energy_per_bit() {
  Check c;
  const PowerSplit split{0.5, 0.5};
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto sc = iid(gamma);
    const double expected[3] = {(gamma + 1.0) / gamma * ln2, ln2, ln2 / gamma};
    for (int i = 0; i < 3; ++i) {
      const Message m = Message(i);
      const double closed =
          min_ebn0_closed_form(OnOffDiscreteMarkov{0.8, 0.8}, m, 1.0, sc, split, kQuad);
      c.expect(closed == expected[i], "gamma=%g %s closed form %.17g == %.17g", gamma, name(m),
               closed, expected[i]);
      for (const SourceModel &src :
           {SourceModel{ConstantRate{}}, SourceModel{OnOffDiscreteMarkov{0.8, 0.8}}}) {
        const auto fit = numeric_low_snr_metrics(src, m, 1.0, sc, split, kQuad);
        const double err = std::abs(fit.ebn0_min_db() - linear_to_db(expected[i]));
        c.expect(err <= 0.05, "gamma=%g %s %s fitted %.4f dB, off by %.2e dB", gamma, name(m),
                 describe(src).c_str(), fit.ebn0_min_db(), err);
      }
    }
  }
  return c.ok;
}

bool theta_and_source_independence() {
  Check c;
  const PowerSplit split{0.4, 0.6};
  const auto sc = iid(1.5);
  for (int i = 0; i < 3; ++i) {
    const Message m = Message(i);
    const double ref = min_ebn0_closed_form(ConstantRate{}, m, 1.0, sc, split, kQuad);
    bool same = true;
    for (double theta : {0.1, 1.0, 5.0})
      for (const SourceModel &src : {SourceModel{ConstantRate{}},
                                     SourceModel{OnOffDiscreteMarkov{0.8, 0.8}},
                                     SourceModel{OnOffMarkovFluid{9.0, 1.0}}})
        same = same && min_ebn0_closed_form(src, m, theta, sc, split, kQuad) == ref;
    c.expect(same, "%s: identical across theta {0.1,1,5} and constant/discrete/fluid (%.17g)",
             name(m), ref);
    for (double theta : {0.1, 1.0, 5.0}) {
      const double factor = std::expm1(theta) / theta;
      const double d =
          min_ebn0_closed_form(OnOffDiscreteMmpp{0.8, 0.8}, m, theta, sc, split, kQuad);
      const double f =
          min_ebn0_closed_form(OnOffContinuousMmpp{9.0, 1.0}, m, theta, sc, split, kQuad);
      c.expect(rel(d, ref * factor) <= 4e-16 && rel(f, ref * factor) <= 4e-16,
               "%s theta=%g: mmpp / fixed-rate = %.17g and %.17g, (e^theta-1)/theta = %.17g",
               name(m), theta, d / ref, f / ref, factor);
    }
  }
  return c.ok;
}

bool wideband_slopes() {
  Check c;
  struct Case {
    SourceModel source;
    Message m;
    double gamma;
  } cases[] = {
      {ConstantRate{}, Message::Confidential1, 1.0},
      {OnOffDiscreteMarkov{0.8, 0.8}, Message::Confidential2, 0.5},
      {OnOffMarkovFluid{1.0, 9.0}, Message::Common, 2.0},
      {OnOffDiscreteMarkov{0.8, 0.8}, Message::Common, 1.0},
      {OnOffDiscreteMmpp{0.8, 0.8}, Message::Confidential1, 2.0},
      {OnOffContinuousMmpp{1.0, 9.0}, Message::Confidential2, 1.0},
  };
  const PowerSplit split{0.5, 0.5};
  for (const auto &k : cases) {
    const auto sc = iid(k.gamma);
    const double closed = wideband_slope_closed_form(k.source, k.m, 1.0, sc, split, kQuad);
    const double shortcut = wideband_slope_shortcut(k.source, k.m, 1.0, sc, split);
    const auto fit = numeric_low_snr_metrics(k.source, k.m, 1.0, sc, split, kQuad);
    c.expect(rel(fit.slope_s0, closed) <= 0.05 && rel(shortcut, closed) <= 1e-10,
             "%s %s gamma=%g: closed %.6f, shortcut %.6f, finite difference %.6f (%.2f%%)",
             describe(k.source).c_str(), name(k.m), k.gamma, closed, shortcut, fit.slope_s0,
             100 * rel(fit.slope_s0, closed));
  }
  return c.ok;
}

bool nocsi_minimum_energy() {
  Check c;
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto m = nocsi_low_snr_metrics(OnOffDiscreteMarkov{0.8, 0.8}, 0.5, gamma);
    const double formula = std::numbers::e * (gamma + 1.0) * ln2;
    c.expect(rel(m.ebn0_min, formula) <= 1e-15, "gamma=%g: %.17g vs e(gamma+1)ln2 = %.17g", gamma,
             m.ebn0_min, formula);
    const double excess = nocsi_ebn0_excess(gamma);
    const double expected = (std::numbers::e * (gamma + 1.0) - 1.0) * ln2;
    c.expect(rel(excess, expected) <= 1e-15,
             "gamma=%g: excess over perfect CSI %.17g vs [e(gamma+1)-1]ln2 = %.17g", gamma, excess,
             expected);
  }
  const auto m = nocsi_low_snr_metrics(OnOffDiscreteMarkov{0.8, 0.8}, 0.5, 1.0);
  c.expect(std::abs(m.ebn0_min_db() - 5.76) <= 0.005, "gamma=1: %.4f dB", m.ebn0_min_db());
  for (const SourceModel &src :
       {SourceModel{OnOffDiscreteMarkov{0.8, 0.8}}, SourceModel{OnOffMarkovFluid{0.5, 0.5}}}) {
    const auto fit = nocsi_numeric_metrics(src, 0.5, FixedRatePolicy::coefficient(1.0),
                                           NoCsiScenario{1.0});
    const double err = std::abs(fit.ebn0_min_db() - m.ebn0_min_db());
    c.expect(err <= 0.05, "%s: fitted %.4f dB, off by %.2e dB", describe(src).c_str(),
             fit.ebn0_min_db(), err);
  }
  return c.ok;
}

std::vector<SimReport> g_reports;

bool simulated_exponents(const std::string &figure) {
  Check c;
  for (const cli::Scenario &s : cli::simulation_presets(figure, 1)) {
    const auto t0 = std::chrono::steady_clock::now();
    const cli::SimulationResult r = cli::run_simulation(s);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double err = std::abs(r.fit.theta_sim - r.theta) / r.theta;
    c.expect(err <= 0.10 && r.report.blocks >= 10'000'000,
             "theta=%g: theta_sim=%.4f (%.1f%%) over %lld blocks, r_on=%.5f, %.1f s", r.theta,
             r.fit.theta_sim, 100 * err, static_cast<long long>(r.report.blocks), r.r_on, secs);
    g_reports.push_back(r.report);
  }
  return c.ok;
}

SourceModel random_source(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> p(0.05, 0.95), rate(0.2, 9.0);
  switch (rng() % 5) {
  case 0:
    return ConstantRate{};
  case 1:
    return OnOffDiscreteMarkov{p(rng), p(rng)};
  case 2:
    return OnOffMarkovFluid{rate(rng), rate(rng)};
  case 3:
    return OnOffDiscreteMmpp{p(rng), p(rng)};
  default:
    return OnOffContinuousMmpp{rate(rng), rate(rng)};
  }
}

bool oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> log_theta(std::log(0.1), std::log(5.0)),
      log_snr(std::log(0.01), std::log(100.0));
  const PowerSplit split{0.5, 0.5};
  for (int k = 0; k < 10; ++k) {
    const SourceModel src = random_source(rng);
    const double theta = std::exp(log_theta(rng)), snr = std::exp(log_snr(rng));
    const Message m = Message(rng() % 3);
    const auto sc = iid(1.0);
    const double ce = effective_capacity(m, snr, theta, sc, split, GaussLaguerre{64});
    const double closed = throughput_from_capacity(src, ce, theta);
    const double bisect = on_probability(src) * solve_on_rate_bisection(src, ce, theta);
    c.expect(rel(closed, bisect) <= 1e-9,
             "%s %s theta=%.3f snr=%.3f: closed %.12g, bisection %.12g (%.1e)",
             describe(src).c_str(), name(m), theta, snr, closed, bisect, rel(closed, bisect));
  }
  struct Case {
    SourceModel src;
    double theta;
    double r;
  } cases[] = {{OnOffDiscreteMarkov{0.8, 0.8}, 1.0, 1.0},
               {OnOffMarkovFluid{1.0, 9.0}, 0.5, 2.0},
               {OnOffDiscreteMmpp{0.8, 0.8}, 0.5, 1.0},
               {OnOffContinuousMmpp{9.0, 1.0}, 0.3, 1.0}};
  OracleOptions o;
  o.seed = 17;
  for (const auto &k : cases) {
    const double exact = effective_bandwidth(k.src, k.theta, k.r);
    const McEstimate est = effective_bandwidth_mc_oracle(k.src, k.theta, k.r, o);
    const double z = std::abs(est.estimate - exact) / est.std_error;
    c.expect(z <= 3.0, "%s theta=%g r=%g: closed %.6f, log-MGF oracle %.6f +- %.1e (%.2f se)",
             describe(k.src).c_str(), k.theta, k.r, exact, est.estimate, est.std_error, z);
  }
  return c.ok;
}

bool monotonicity() {
  Check c;
  const auto sc = iid(1.0);
  const PowerSplit split{0.5, 0.5};
  const std::vector<double> snr = cli::db_grid(-10, 20, 13);
  const std::vector<double> s_grid{0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95};
  const std::vector<double> theta_grid{0.1, 0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> rho_grid{0.0, 0.2, 0.4, 0.6, 0.8};
  auto r_avg = [&](const SourceModel &src, Message m, double x, double theta,
                   const FadingScenario &f, const ExpectationMethod &method) {
    return max_avg_arrival_rate(src, m, x, theta, f, split, method);
  };
  for (int i = 0; i < 3; ++i) {
    const Message m = Message(i);
    bool snr_ok = true, s_ok = true, theta_ok = true;
    for (double sp : s_grid) {
      const SourceModel src = OnOffDiscreteMarkov{1.0 - sp, sp};
      for (std::size_t k = 1; k < snr.size(); ++k)
        snr_ok = snr_ok && r_avg(src, m, snr[k], 1.0, sc, kQuad) >=
                               r_avg(src, m, snr[k - 1], 1.0, sc, kQuad);
    }
    for (double x : snr) {
      for (std::size_t k = 1; k < s_grid.size(); ++k)
        s_ok = s_ok &&
               r_avg(OnOffDiscreteMarkov{1.0 - s_grid[k], s_grid[k]}, m, x, 1.0, sc, kQuad) >=
                   r_avg(OnOffDiscreteMarkov{1.0 - s_grid[k - 1], s_grid[k - 1]}, m, x, 1.0, sc,
                         kQuad);
      for (std::size_t k = 1; k < theta_grid.size(); ++k)
        theta_ok = theta_ok && r_avg(OnOffMarkovFluid{1.0, 1.0}, m, x, theta_grid[k], sc, kQuad) <=
                                   r_avg(OnOffMarkovFluid{1.0, 1.0}, m, x, theta_grid[k - 1], sc,
                                         kQuad);
    }
    c.expect(snr_ok, "%s: nondecreasing in snr (13 points, -10..20 dB, 7 values of s)", name(m));
    c.expect(s_ok, "%s: nondecreasing in s (s = 0.1..0.95, every snr)", name(m));
    c.expect(theta_ok, "%s: nonincreasing in theta (0.1..4, every snr)", name(m));
  }
  for (Message m : {Message::Confidential1, Message::Confidential2}) {
    bool rho_ok = true;
    for (double x : {0.1, 1.0, 10.0}) {
      double previous = INFINITY;
      for (double rho : rho_grid) {
        const FadingScenario f{FadingFamily::Rayleigh, 1.0, 1.0, rho};
        const double r = r_avg(OnOffDiscreteMarkov{0.5, 0.5}, m, x, 1.0, f, MonteCarlo{1'000'000, 7});
        rho_ok = rho_ok && r <= previous;
        previous = r;
      }
    }
    c.expect(rho_ok, "%s: nonincreasing in rho (0..0.8, snr 0.1/1/10, common random numbers)",
             name(m));
  }
  bool q_ok = !g_reports.empty();
  for (const SimReport &rep : g_reports)
    for (std::size_t k = 1; k < rep.exceed_counts.size(); ++k)
      q_ok = q_ok && rep.exceed_counts[k] <= rep.exceed_counts[k - 1];
  c.expect(q_ok, "overflow frequencies nonincreasing in q (%zu simulated runs)", g_reports.size());
  return c.ok;
}

} // namespace

int main() {
  struct Criterion {
    const char *title;
    std::function<bool()> run;
  } criteria[] = {
      {"minimum energy per bit, perfect CSI: closed forms exact, numeric fit within 0.05 dB",
       minimum_energy_per_bit},
      {"minimum energy per bit independent of theta and source; MMPP scaled by (e^theta-1)/theta",
       theta_and_source_independence},
      {"wideband slopes: closed forms within 5% of finite differences on 6 parameter sets",
       wideband_slopes},
      {"no CSI: minimum energy per bit e(gamma+1)ln2, 5.76 dB at gamma=1, fit within 0.05 dB",
       nocsi_minimum_energy},
      {"simulated QoS exponent within 10%, perfect CSI (fig3 configuration)",
       [] { return simulated_exponents("fig3"); }},
      {"simulated QoS exponent within 10%, no CSI (fig11 configuration)",
       [] { return simulated_exponents("fig11"); }},
      {"oracle equivalence: closed-form throughput vs bisection, bandwidth vs log-MGF oracle",
       oracle_equivalence},
      {"monotonicity suite", monotonicity},
  };
  int failed = 0, index = 0;
  for (const auto &c : criteria) {
    ++index;
    std::printf("criterion %d: %s\n", index, c.title);
    std::fflush(stdout);
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception &e) {
      std::printf("    FAIL exception: %s\n", e.what());
    }
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", index, c.title);
    std::fflush(stdout);
    failed += !ok;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
