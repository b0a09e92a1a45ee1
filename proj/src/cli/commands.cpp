// SPDX-License-Identifier: Apache-2.0
#include "secqos/cli/commands.hpp"

#include <cmath>

#include "secqos/energy.hpp"
#include "secqos/nocsi.hpp"
#include "secqos/qos.hpp"

namespace secqos::cli {

namespace {

constexpr Message kMessages[] = {Message::Common, Message::Confidential1, Message::Confidential2};

std::string describe_fading(const FadingScenario &f) {
  return "rayleigh mean_z1=" + fmt(f.mean_z1) + " mean_z2=" + fmt(f.mean_z2) +
         " power_correlation=" + fmt(f.power_correlation);
}

std::string describe_split(const PowerSplit &s) {
  return "delta1=" + fmt(s.delta1) + " delta2=" + fmt(s.delta2);
}

void common_meta(CsvTable &t, const Scenario &s) {
  t.meta("seed", std::to_string(s.seed));
  t.meta("scenario", s.name);
  t.meta("method", describe(s.method));
  t.meta("source", describe(s.source));
  t.meta("fading", describe_fading(s.fading));
  t.meta("split", describe_split(s.split));
}

void require_snr(const Scenario &s) {
  if (s.snr.empty())
    throw ConfigError("config error at snr: snr grid is empty");
}

std::filesystem::path output_path(const RunOptions &o, const Scenario &s, const char *cmd,
                                  const char *ext) {
  return o.out_dir / (s.name + "_" + cmd + ext);
}

std::string policy_label(const FixedRatePolicy &p) {
  return p.is_coefficient() ? "a=" + fmt(p.value()) : "lambda=" + fmt(p.value());
}

} // namespace

void apply_overrides(Scenario &scenario, const RunOptions &options) {
  if (options.threads < 0)
    throw ConfigError("config error at --threads: must be nonnegative");
  if (options.threads > 0)
    set_default_threads(options.threads);
  if (options.seed)
    scenario.seed = *options.seed;
  if (options.method) {
    if (*options.method == "mc")
      scenario.method = MonteCarlo{};
    else if (*options.method == "quad")
      scenario.method = GaussLaguerre{};
    else
      throw ConfigError("config error at --method: must be 'mc' or 'quad'");
  }
  if (auto *mc = std::get_if<MonteCarlo>(&scenario.method)) {
    mc->seed = scenario.seed;
    if (options.samples) {
      if (*options.samples < 2)
        throw ConfigError("config error at --samples: need at least 2 samples");
      mc->samples = *options.samples;
    }
  }
  if (std::holds_alternative<GaussLaguerre>(scenario.method) &&
      !scenario.fading.independent_exponential())
    throw ConfigError("config error at method: quadrature requires fading.power_correlation = 0");
}

CsvTable analyze_table(const Scenario &s) {
  require_snr(s);
  CsvTable t("analyze", {"snr[linear]", "snr_db[dB]", "c_e_common[bits/block]",
                         "c_e_user1[bits/block]", "c_e_user2[bits/block]",
                         "r_avg_common[bits/block]", "r_avg_user1[bits/block]",
                         "r_avg_user2[bits/block]"});
  common_meta(t, s);
  t.meta("theta", "common=" + fmt(s.theta[0]) + " user1=" + fmt(s.theta[1]) +
                      " user2=" + fmt(s.theta[2]));
  for (double snr : s.snr) {
    std::vector<std::string> row{fmt(snr), fmt(linear_to_db(snr))};
    std::vector<std::string> rates;
    for (Message m : kMessages) {
      const double theta = s.theta_of(m);
      const double c = effective_capacity(m, snr, theta, s.fading, s.split, s.method);
      row.push_back(fmt(c));
      rates.push_back(fmt(throughput_from_capacity(s.source, c, theta)));
    }
    row.insert(row.end(), rates.begin(), rates.end());
    t.row(row);
  }
  return t;
}

CsvTable energy_table(const Scenario &s) {
  require_snr(s);
  const Message m = s.energy_message;
  const double theta = s.theta_of(m);
  CsvTable t("energy", {"snr[linear]", "eb_n0_db[dB]", "r_avg[bits/block]"});
  common_meta(t, s);
  t.meta("message", message_name(m));
  t.meta("theta", fmt(theta));
  const double ebn0 = min_ebn0_closed_form(s.source, m, theta, s.fading, s.split, s.method);
  const double s0 = wideband_slope_closed_form(s.source, m, theta, s.fading, s.split, s.method);
  t.meta("ebn0_min_closed_form[dB]", fmt(linear_to_db(ebn0)));
  t.meta("s0_closed_form[bits/s/Hz/3dB]", fmt(s0));
  for (const auto &p : energy_curve(s.source, m, theta, s.fading, s.split, s.method, s.snr))
    t.row({fmt(p.snr), fmt(p.eb_n0_db), fmt(p.r_avg)});
  return t;
}

SimulationResult run_simulation(const Scenario &s) {
  const SimulateSpec &spec = s.simulate;
  SimConfig config;
  config.source = s.source;
  if (spec.no_csi) {
    NoCsiService service;
    service.snr = spec.snr;
    service.policy = spec.policy;
    service.scenario.gamma = spec.gamma;
    config.service = service;
  } else {
    PerfectCsiService service;
    service.message = spec.message;
    service.snr = spec.snr;
    service.scenario = s.fading;
    service.split = s.split;
    service.method = s.method;
    config.service = service;
  }
  config.horizon = spec.horizon;
  config.seed = s.seed;
  config.thresholds = spec.thresholds.empty()
                          ? default_thresholds(spec.theta, spec.threshold_points,
                                               spec.threshold_span)
                          : spec.thresholds;
  config.delay_grid = spec.delay_grid;

  SimulationResult out;
  out.theta = spec.theta;
  out.r_on = calibrate_on_rate(config.source, config.service, spec.theta);
  out.report = run_buffer_sim(config, out.r_on);
  out.fit = fit_qos_exponent(out.report);
  return out;
}

CsvTable simulation_table(const Scenario &s, const SimulationResult &r) {
  CsvTable t("simulate", {"q[bits]", "count[blocks]", "prob", "ln_prob"});
  t.meta("seed", std::to_string(s.seed));
  t.meta("scenario", s.name);
  t.meta("source", describe(s.source));
  if (s.simulate.no_csi) {
    t.meta("service", "nocsi snr=" + fmt(s.simulate.snr) + " " + policy_label(s.simulate.policy) +
                          " gamma=" + fmt(s.simulate.gamma));
  } else {
    t.meta("service", "perfect message=" + message_name(s.simulate.message) +
                          " snr=" + fmt(s.simulate.snr));
    t.meta("fading", describe_fading(s.fading));
    t.meta("split", describe_split(s.split));
    t.meta("method", describe(s.method));
  }
  t.meta("horizon", std::to_string(r.report.blocks));
  t.meta("theta_target", fmt(r.theta));
  t.meta("r_on[bits/block]", fmt(r.r_on));
  t.meta("theta_sim", fmt(r.fit.theta_sim));
  t.meta("theta_sim_std_error", fmt(r.fit.theta_std_error));
  t.meta("intercept", fmt(r.fit.intercept));
  t.meta("sigma_nonempty", fmt(r.report.sigma_nonempty()));
  t.meta("mean_arrival[bits/block]", fmt(r.report.mean_arrival_rate()));
  t.meta("mean_service[bits/block]", fmt(r.report.mean_service_rate()));
  const auto prob = r.report.overflow_prob();
  for (std::size_t k = 0; k < prob.size(); ++k)
    t.row({fmt(r.report.thresholds[k]), fmt(static_cast<long long>(r.report.exceed_counts[k])),
           fmt(prob[k]), prob[k] > 0 ? fmt(std::log(prob[k])) : "-inf"});
  return t;
}

CsvTable nocsi_table(const Scenario &s) {
  require_snr(s);
  const NoCsiSpec &spec = s.nocsi;
  NoCsiScenario scenario;
  scenario.gamma = spec.gamma;
  CsvTable t("nocsi", {"policy", "snr[linear]", "lambda[bits/block]", "p_on", "c_e[bits/block]",
                       "r_avg[bits/block]", "eb_n0_db[dB]"});
  t.meta("seed", std::to_string(s.seed));
  t.meta("scenario", s.name);
  t.meta("source", describe(s.source));
  t.meta("gamma", fmt(spec.gamma));
  t.meta("theta", fmt(spec.theta));
  const LowSnrMetrics closed = nocsi_low_snr_metrics(s.source, spec.theta, spec.gamma);
  t.meta("ebn0_min_closed_form_a1[dB]", fmt(closed.ebn0_min_db()));
  t.meta("s0_closed_form_a1[bits/s/Hz/3dB]", fmt(closed.slope_s0));
  for (const auto &policy : spec.policies) {
    for (double snr : s.snr) {
      const double lambda = policy.lambda(snr);
      const double p_on = secure_on_probability(snr, lambda, scenario);
      const double c = effective_capacity_nocsi(snr, spec.theta, policy, scenario);
      const double r = throughput_from_capacity(s.source, c, spec.theta);
      t.row({policy_label(policy), fmt(snr), fmt(lambda), fmt(p_on), fmt(c), fmt(r),
             fmt(r > 0 ? linear_to_db(snr / r) : INFINITY)});
    }
  }
  return t;
}

CommandOutput cmd_analyze(const Scenario &s, const RunOptions &o) {
  const CsvTable t = analyze_table(s);
  CommandOutput out;
  out.files.push_back(output_path(o, s, "analyze", ".csv"));
  t.write(out.files.back());
  out.summary.push_back("analyze: " + std::to_string(t.rows()) + " snr points");
  return out;
}

CommandOutput cmd_energy(const Scenario &s, const RunOptions &o) {
  const CsvTable t = energy_table(s);
  CommandOutput out;
  out.files.push_back(output_path(o, s, "energy", ".csv"));
  t.write(out.files.back());

  Series series{message_name(s.energy_message), {}, {}};
  for (const auto &p : energy_curve(s.source, s.energy_message, s.theta_of(s.energy_message),
                                    s.fading, s.split, s.method, s.snr)) {
    series.x.push_back(p.eb_n0_db);
    series.y.push_back(p.r_avg);
  }
  out.files.push_back(output_path(o, s, "energy", ".svg"));
  write_svg(out.files.back(), {s.name, "Eb/N0 (dB)", "r_avg (bits/block)", false}, {series});
  out.summary.push_back("energy: " + std::to_string(t.rows()) + " points");
  return out;
}

CommandOutput cmd_simulate(const Scenario &s, const RunOptions &o) {
  const SimulationResult r = run_simulation(s);
  const CsvTable t = simulation_table(s, r);
  CommandOutput out;
  out.files.push_back(output_path(o, s, "simulate", ".csv"));
  t.write(out.files.back());

  Series series{"theta=" + fmt(r.theta), r.report.thresholds, r.report.overflow_prob()};
  out.files.push_back(output_path(o, s, "simulate", ".svg"));
  write_svg(out.files.back(), {s.name, "buffer threshold q (bits)", "Pr{Q >= q}", true}, {series});
  out.summary.push_back("fit theta_target=" + fmt(r.theta) + " theta_sim=" + fmt(r.fit.theta_sim) +
                        " std_error=" + fmt(r.fit.theta_std_error) +
                        " sigma=" + fmt(r.report.sigma_nonempty()) + " r_on=" + fmt(r.r_on));
  return out;
}

CommandOutput cmd_nocsi(const Scenario &s, const RunOptions &o) {
  const CsvTable t = nocsi_table(s);
  CommandOutput out;
  out.files.push_back(output_path(o, s, "nocsi", ".csv"));
  t.write(out.files.back());

  NoCsiScenario scenario;
  scenario.gamma = s.nocsi.gamma;
  std::vector<Series> series;
  for (const auto &policy : s.nocsi.policies) {
    Series c{policy_label(policy), {}, {}};
    for (double snr : s.snr) {
      const double r = nocsi_throughput(s.source, snr, s.nocsi.theta, policy, scenario);
      c.x.push_back(r > 0 ? linear_to_db(snr / r) : NAN);
      c.y.push_back(r);
    }
    series.push_back(std::move(c));
  }
  out.files.push_back(output_path(o, s, "nocsi", ".svg"));
  write_svg(out.files.back(), {s.name, "Eb/N0 (dB)", "r_avg (bits/block)", false}, series);
  out.summary.push_back("nocsi: " + std::to_string(t.rows()) + " rows");
  return out;
}

} // namespace secqos::cli
