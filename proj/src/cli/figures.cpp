// SPDX-License-Identifier: Apache-2.0
//
// Preset experiments. Values the figure captions leave open are marked
// "assumed" in the CSV header of each figure.
#include <cmath>
#include <functional>
#include <map>

#include "secqos/cli/commands.hpp"
#include "secqos/energy.hpp"
#include "secqos/nocsi.hpp"
#include "secqos/qos.hpp"

namespace secqos::cli {

namespace {

struct Curve {
  std::string label;
  Scenario scenario;
  Message message = Message::Confidential1;
};

Scenario base(const RunOptions &o, const std::string &name) {
  Scenario s;
  s.name = name;
  s.seed = o.seed.value_or(1);
  s.method = MonteCarlo{o.samples.value_or(1'000'000), s.seed};
  return s;
}

// Applies --method/--samples to one curve; quadrature is used wherever the
// fading allows it unless Monte Carlo was requested.
void finish(Scenario &s, const RunOptions &o, bool prefer_quadrature) {
  if (prefer_quadrature && !o.method && s.fading.independent_exponential())
    s.method = GaussLaguerre{};
  RunOptions curve_options = o;
  curve_options.seed = s.seed;
  curve_options.threads = 0;
  apply_overrides(s, curve_options);
}

FadingScenario fading(double gamma, double rho) {
  FadingScenario f;
  f.mean_z2 = gamma;
  f.power_correlation = rho;
  return f;
}

CommandOutput write_figure(const std::string &figure, const RunOptions &o, const CsvTable &table,
                           const PlotSpec &plot, const std::vector<Series> &series,
                           std::vector<std::string> summary) {
  CommandOutput out;
  out.files.push_back(o.out_dir / (figure + ".csv"));
  table.write(out.files.back());
  out.files.push_back(o.out_dir / (figure + ".svg"));
  write_svg(out.files.back(), plot, series);
  out.summary = std::move(summary);
  return out;
}

// Throughput vs snr (dB), one curve per entry.
CommandOutput throughput_figure(const std::string &figure, const RunOptions &o,
                                const std::vector<Curve> &curves,
                                const std::vector<std::pair<std::string, std::string>> &notes) {
  CsvTable t(figure, {"curve", "snr[linear]", "snr_db[dB]", "c_e[bits/block]",
                      "r_avg[bits/block]"});
  t.meta("seed", std::to_string(o.seed.value_or(1)));
  for (const auto &[k, v] : notes)
    t.meta(k, v);
  std::vector<Series> series;
  for (const Curve &c : curves) {
    const Scenario &s = c.scenario;
    t.meta("curve[" + c.label + "]", "source=" + describe(s.source) + "; message=" +
                                   message_name(c.message) + "; theta=" +
                                   fmt(s.theta_of(c.message)) + "; method=" + describe(s.method));
    Series line{c.label, {}, {}};
    for (double snr : s.snr) {
      const double theta = s.theta_of(c.message);
      const double ce = effective_capacity(c.message, snr, theta, s.fading, s.split, s.method);
      const double r = throughput_from_capacity(s.source, ce, theta);
      t.row({c.label, fmt(snr), fmt(linear_to_db(snr)), fmt(ce), fmt(r)});
      line.x.push_back(linear_to_db(snr));
      line.y.push_back(r);
    }
    series.push_back(std::move(line));
  }
  return write_figure(figure, o, t,
                      {figure + ": maximum average arrival rate", "SNR (dB)",
                       "r_avg (bits/block)", false},
                      series, {figure + ": " + std::to_string(t.rows()) + " rows"});
}

// Throughput vs energy per bit, with closed-form references per curve.
CommandOutput energy_figure(const std::string &figure, const RunOptions &o,
                            const std::vector<Curve> &curves,
                            const std::vector<std::pair<std::string, std::string>> &notes) {
  CsvTable t(figure, {"curve", "snr[linear]", "eb_n0_db[dB]", "r_avg[bits/block]"});
  t.meta("seed", std::to_string(o.seed.value_or(1)));
  for (const auto &[k, v] : notes)
    t.meta(k, v);
  std::vector<Series> series;
  std::vector<std::string> summary;
  for (const Curve &c : curves) {
    const Scenario &s = c.scenario;
    const double theta = s.theta_of(c.message);
    const double ebn0 = min_ebn0_closed_form(s.source, c.message, theta, s.fading, s.split,
                                             s.method);
    const double s0 = wideband_slope_closed_form(s.source, c.message, theta, s.fading, s.split,
                                                 s.method);
    t.meta("curve[" + c.label + "]",
           "source=" + describe(s.source) + "; message=" + message_name(c.message) +
               "; theta=" + fmt(theta) + "; method=" + describe(s.method) +
               "; ebn0_min_closed_form_db=" + fmt(linear_to_db(ebn0)) + "; s0_closed_form=" +
               fmt(s0));
    summary.push_back(figure + " " + c.label + ": Eb/N0_min = " + fmt(linear_to_db(ebn0)) +
                      " dB, S0 = " + fmt(s0));
    Series line{c.label, {}, {}};
    for (const auto &p :
         energy_curve(s.source, c.message, theta, s.fading, s.split, s.method, s.snr)) {
      t.row({c.label, fmt(p.snr), fmt(p.eb_n0_db), fmt(p.r_avg)});
      line.x.push_back(p.eb_n0_db);
      line.y.push_back(p.r_avg);
    }
    series.push_back(std::move(line));
  }
  return write_figure(figure, o, t,
                      {figure + ": throughput vs energy per bit", "Eb/N0 (dB)",
                       "r_avg (bits/block)", false},
                      series, summary);
}

std::vector<double> throughput_snr_grid() { return db_grid(-10.0, 20.0, 13); }
std::vector<double> energy_snr_grid() { return log_grid(1e-3, 10.0, 25); }

CommandOutput fig2(const RunOptions &o) {
  std::vector<Curve> curves;
  for (double rho : {0.1, 0.5})
    for (double s : {0.2, 0.5, 0.8}) {
      Curve c{"s=" + fmt(s) + " rho=" + fmt(rho), base(o, "fig2"), Message::Confidential1};
      c.scenario.source = OnOffDiscreteMarkov{1.0 - s, s};
      c.scenario.fading = fading(1.0, rho);
      c.scenario.split = {0.5, 0.5};
      c.scenario.theta = {1.0, 1.0, 1.0};
      c.scenario.snr = throughput_snr_grid();
      finish(c.scenario, o, false);
      curves.push_back(std::move(c));
    }
  return throughput_figure("fig2", o, curves,
                           {{"setting", "user 1 confidential, theta1=1, delta1=0.5"},
                            {"assumed", "gamma=1"}});
}

CommandOutput fig4(const RunOptions &o) {
  std::vector<Curve> curves;
  for (double gamma : {1.0, 2.0})
    for (auto [alpha, beta] : {std::pair{9.0, 1.0}, {5.0, 5.0}, {1.0, 9.0}}) {
      Curve c{"alpha=" + fmt(alpha) + " beta=" + fmt(beta) + " gamma=" + fmt(gamma),
              base(o, "fig4"), Message::Confidential2};
      c.scenario.source = OnOffMarkovFluid{alpha, beta};
      c.scenario.fading = fading(gamma, 0.05);
      c.scenario.split = {0.5, 0.5};
      c.scenario.theta = {1.0, 1.0, 1.0};
      c.scenario.snr = throughput_snr_grid();
      finish(c.scenario, o, false);
      curves.push_back(std::move(c));
    }
  return throughput_figure("fig4", o, curves,
                           {{"setting", "user 2 confidential, theta2=1, delta2=0.5, rho=0.05"}});
}

CommandOutput discrete_energy(const std::string &figure, Message m, const RunOptions &o) {
  std::vector<Curve> curves;
  for (double s : {0.2, 0.5, 0.8}) {
    Curve c{"s=" + fmt(s), base(o, figure), m};
    c.scenario.source = OnOffDiscreteMarkov{1.0 - s, s};
    c.scenario.fading = fading(1.0, 0.05);
    c.scenario.split = {0.5, 0.5};
    c.scenario.theta = {1.0, 1.0, 1.0};
    c.scenario.snr = energy_snr_grid();
    finish(c.scenario, o, false);
    curves.push_back(std::move(c));
  }
  return energy_figure(figure, o, curves,
                       {{"setting", message_name(m) + ", theta=1, delta1=delta2=0.5, rho=0.05"},
                        {"assumed", "gamma=1"}});
}

CommandOutput fig8(const RunOptions &o) {
  std::vector<Curve> curves;
  for (Message m : {Message::Confidential1, Message::Common})
    for (double rho : {0.0, 0.4, 0.8}) {
      Curve c{message_name(m) + " rho=" + fmt(rho), base(o, "fig8"), m};
      c.scenario.source = OnOffMarkovFluid{9.0, 1.0};
      c.scenario.fading = fading(1.0, rho);
      c.scenario.split = {0.5, 0.5};
      c.scenario.theta = {1.0, 1.0, 1.0};
      c.scenario.snr = energy_snr_grid();
      finish(c.scenario, o, false);
      curves.push_back(std::move(c));
    }
  return energy_figure("fig8", o, curves,
                       {{"setting", "Markov fluid source, theta=1, gamma=1, delta1=delta2=0.5"},
                        {"assumed", "alpha=9 beta=1; rho in {0, 0.4, 0.8}"}});
}

CommandOutput fig9(const RunOptions &o) {
  std::vector<Curve> curves;
  auto add = [&](double theta, double delta) {
    Curve c{"theta0=" + fmt(theta) + " delta=" + fmt(delta), base(o, "fig9"), Message::Common};
    c.scenario.source = OnOffDiscreteMmpp{0.1, 0.9};
    c.scenario.fading = fading(1.0, 0.8);
    c.scenario.split = {delta, delta};
    c.scenario.theta = {theta, theta, theta};
    c.scenario.snr = energy_snr_grid();
    finish(c.scenario, o, false);
    curves.push_back(std::move(c));
  };
  for (double theta : {0.5, 1.0, 2.0})
    add(theta, 0.5);
  for (double delta : {0.2, 0.8})
    add(1.0, delta);
  return energy_figure("fig9", o, curves,
                       {{"setting", "discrete MMPP p11=0.1 p22=0.9, common message, rho=0.8, "
                                    "gamma=1"},
                        {"assumed", "theta0 in {0.5, 1, 2} at delta=0.5; delta in {0.2, 0.8} "
                                    "at theta0=1"}});
}

CommandOutput fig10(const RunOptions &o) {
  std::vector<Curve> curves;
  for (double theta : {0.5, 1.0, 2.0}) {
    Curve c{"theta0=" + fmt(theta), base(o, "fig10"), Message::Common};
    c.scenario.source = OnOffContinuousMmpp{9.0, 1.0};
    c.scenario.fading = fading(1.0, 0.0);
    c.scenario.split = {0.5, 0.5};
    c.scenario.theta = {theta, theta, theta};
    c.scenario.snr = energy_snr_grid();
    finish(c.scenario, o, true);
    curves.push_back(std::move(c));
  }
  return energy_figure("fig10", o, curves,
                       {{"setting", "continuous MMPP alpha=9 beta=1, common message, rho=0"},
                        {"assumed", "gamma=1, delta1=delta2=0.5"}});
}

CommandOutput simulation_figure(const std::string &figure, const RunOptions &o) {
  CsvTable t(figure, {"curve", "q[bits]", "count[blocks]", "prob", "ln_prob"});
  const std::uint64_t seed = o.seed.value_or(1);
  t.meta("seed", std::to_string(seed));
  if (figure == "fig3")
    t.meta("assumed", "gamma=1, rho=0; user1 at theta=0.5, common at theta=1, user2 at theta=2");
  else
    t.meta("assumed", "gamma=1; lambda = snr/ln2 (a=1)");
  std::vector<Series> series;
  std::vector<std::string> summary;
  for (Scenario s : simulation_presets(figure, seed)) {
    if (!s.simulate.no_csi)
      finish(s, o, true);
    const SimulationResult r = run_simulation(s);
    const std::string label = "theta=" + fmt(r.theta);
    t.meta("curve[" + label + "]",
           "r_on=" + fmt(r.r_on) + "; theta_sim=" + fmt(r.fit.theta_sim) + "; std_error=" +
               fmt(r.fit.theta_std_error) + "; sigma=" + fmt(r.report.sigma_nonempty()) +
               "; seed=" + std::to_string(s.seed) + "; horizon=" + std::to_string(r.report.blocks));
    summary.push_back(figure + " " + label + ": theta_sim = " + fmt(r.fit.theta_sim));
    const auto prob = r.report.overflow_prob();
    for (std::size_t k = 0; k < prob.size(); ++k)
      t.row({label, fmt(r.report.thresholds[k]),
             fmt(static_cast<long long>(r.report.exceed_counts[k])), fmt(prob[k]),
             prob[k] > 0 ? fmt(std::log(prob[k])) : "-inf"});
    series.push_back({label, r.report.thresholds, prob});
  }
  return write_figure(figure, o, t,
                      {figure + ": buffer overflow probability", "buffer threshold q (bits)",
                       "Pr{Q >= q}", true},
                      series, summary);
}

CommandOutput fig12(const RunOptions &o) {
  CsvTable t("fig12", {"curve", "snr[linear]", "lambda[bits/block]", "r_avg[bits/block]",
                       "eb_n0_db[dB]"});
  t.meta("seed", std::to_string(o.seed.value_or(1)));
  t.meta("setting", "no CSI, theta=0.5, gamma=1, lambda = a snr/ln2");
  t.meta("assumed", "discrete p11=p22=0.8 and fluid alpha=beta=0.5 sources");
  const double theta = 0.5;
  NoCsiScenario scenario;
  const std::vector<double> grid = log_grid(1e-3, 1.0, 25);
  std::vector<Series> series;
  std::vector<std::string> summary;
  const std::pair<std::string, SourceModel> sources[] = {
      {"discrete", OnOffDiscreteMarkov{0.8, 0.8}}, {"fluid", OnOffMarkovFluid{0.5, 0.5}}};
  for (const auto &[name, source] : sources)
    for (double a : {0.6, 0.8, 1.0, 1.2}) {
      const auto policy = FixedRatePolicy::coefficient(a);
      const std::string label = name + " a=" + fmt(a);
      Series line{label, {}, {}};
      for (double snr : grid) {
        const double r = nocsi_throughput(source, snr, theta, policy, scenario);
        const double ebn0_db = linear_to_db(snr / r);
        t.row({label, fmt(snr), fmt(policy.lambda(snr)), fmt(r), fmt(ebn0_db)});
        line.x.push_back(ebn0_db);
        line.y.push_back(r);
      }
      series.push_back(std::move(line));
      const LowSnrMetrics fit = nocsi_numeric_metrics(source, theta, policy, scenario);
      t.meta("curve[" + label + "]", "ebn0_min_fit_db=" + fmt(fit.ebn0_min_db()));
      summary.push_back("fig12 " + label + ": fitted Eb/N0_min = " + fmt(fit.ebn0_min_db()) +
                        " dB");
    }
  return write_figure("fig12", o, t,
                      {"fig12: fixed-rate coefficient sweep", "Eb/N0 (dB)",
                       "r_avg (bits/block)", false},
                      series, summary);
}

using FigureFn = std::function<CommandOutput(const RunOptions &)>;

const std::map<std::string, FigureFn> &registry() {
  static const std::map<std::string, FigureFn> figures = {
      {"fig2", fig2},
      {"fig3", [](const RunOptions &o) { return simulation_figure("fig3", o); }},
      {"fig4", fig4},
      {"fig5",
       [](const RunOptions &o) { return discrete_energy("fig5", Message::Confidential1, o); }},
      {"fig6",
       [](const RunOptions &o) { return discrete_energy("fig6", Message::Confidential2, o); }},
      {"fig7", [](const RunOptions &o) { return discrete_energy("fig7", Message::Common, o); }},
      {"fig8", fig8},
      {"fig9", fig9},
      {"fig10", fig10},
      {"fig11", [](const RunOptions &o) { return simulation_figure("fig11", o); }},
      {"fig12", fig12},
  };
  return figures;
}

} // namespace

std::vector<Scenario> simulation_presets(const std::string &figure, std::uint64_t seed) {
  std::vector<Scenario> out;
  if (figure == "fig3") {
    const std::pair<Message, double> streams[] = {
        {Message::Confidential1, 0.5}, {Message::Common, 1.0}, {Message::Confidential2, 2.0}};
    std::uint64_t k = 0;
    for (auto [m, theta] : streams) {
      Scenario s;
      s.name = "fig3";
      s.seed = derive_seed(seed, k++);
      s.source = OnOffDiscreteMarkov{0.8, 0.8};
      s.fading = fading(1.0, 0.0);
      s.split = {0.7, 0.7};
      s.theta = {1.0, 0.5, 2.0};
      s.method = GaussLaguerre{};
      s.simulate.message = m;
      s.simulate.theta = theta;
      s.simulate.snr = 1.0;
      out.push_back(std::move(s));
    }
  } else if (figure == "fig11") {
    std::uint64_t k = 0;
    for (double theta : {0.5, 1.0, 2.0}) {
      Scenario s;
      s.name = "fig11";
      s.seed = derive_seed(seed, k++);
      s.source = OnOffDiscreteMarkov{0.8, 0.8};
      s.simulate.no_csi = true;
      s.simulate.theta = theta;
      s.simulate.snr = 0.05;
      s.simulate.policy = FixedRatePolicy::coefficient(1.0);
      s.simulate.gamma = 1.0;
      out.push_back(std::move(s));
    }
  } else {
    throw ConfigError("no simulation preset for '" + figure + "'");
  }
  return out;
}

std::vector<std::string> figure_names() {
  std::vector<std::string> names;
  for (const auto &[name, fn] : registry())
    names.push_back(name);
  return names;
}

CommandOutput reproduce(const std::string &figure, const RunOptions &options) {
  const auto &figures = registry();
  const auto it = figures.find(figure);
  if (it == figures.end())
    throw ConfigError("config error at figure: unknown figure '" + figure + "'");
  if (options.threads > 0)
    set_default_threads(options.threads);
  return it->second(options);
}

} // namespace secqos::cli
