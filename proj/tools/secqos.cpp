// SPDX-License-Identifier: Apache-2.0
//
// secqos: experiment runner.
//   secqos analyze  --config scenario.json [--out DIR] [--seed N] ...
//   secqos energy   --config scenario.json
//   secqos simulate --config scenario.json
//   secqos nocsi    --config scenario.json
//   secqos reproduce fig3 [--out DIR]
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "secqos/cli/commands.hpp"
#include "secqos/errors.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 1;
  std::string method;
  std::int64_t samples = 0;
  int threads = 0;
};

void add_common(CLI::App &cmd, Flags &f, bool needs_config) {
  auto *config = cmd.add_option("--config", f.config, "scenario file (JSON)");
  if (needs_config)
    config->required()->check(CLI::ExistingFile);
  cmd.add_option("--out", f.out, "output directory")->capture_default_str();
  cmd.add_option("--seed", f.seed, "root random seed");
  cmd.add_option("--method", f.method, "expectation method")
      ->check(CLI::IsMember({"mc", "quad"}));
  cmd.add_option("--samples", f.samples, "Monte Carlo samples per expectation")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--threads", f.threads, "worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
}

secqos::cli::RunOptions options_from(const CLI::App &cmd, const Flags &f) {
  secqos::cli::RunOptions o;
  o.out_dir = f.out;
  if (cmd.count("--seed"))
    o.seed = f.seed;
  if (!f.method.empty())
    o.method = f.method;
  if (cmd.count("--samples"))
    o.samples = f.samples;
  o.threads = f.threads;
  return o;
}

void report(const secqos::cli::CommandOutput &out) {
  for (const auto &line : out.summary)
    std::cout << line << '\n';
  for (const auto &file : out.files)
    std::cout << "wrote " << file.string() << '\n';
}

} // namespace

int main(int argc, char **argv) {
  namespace cli = secqos::cli;
  CLI::App app{"Secure throughput and energy efficiency under statistical QoS constraints"};
  app.require_subcommand(1);

  Flags flags;
  auto *analyze = app.add_subcommand("analyze", "throughput and effective capacity vs snr");
  auto *energy = app.add_subcommand("energy", "throughput vs energy per bit");
  auto *simulate = app.add_subcommand("simulate", "buffer simulation and exponent fit");
  auto *nocsi = app.add_subcommand("nocsi", "fixed-rate transmission without CSI");
  auto *repro = app.add_subcommand("reproduce", "run a preset figure experiment");
  for (auto *cmd : {analyze, energy, simulate, nocsi})
    add_common(*cmd, flags, true);
  add_common(*repro, flags, false);
  std::string figure;
  repro->add_option("figure", figure, "fig2 ... fig12")
      ->required()
      ->check(CLI::IsMember(cli::figure_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    CLI::App *cmd = app.get_subcommands().front();
    const cli::RunOptions options = options_from(*cmd, flags);
    if (cmd == repro) {
      report(cli::reproduce(figure, options));
      return 0;
    }
    cli::Scenario scenario = cli::load_scenario(flags.config);
    cli::apply_overrides(scenario, options);
    if (cmd == analyze)
      report(cli::cmd_analyze(scenario, options));
    else if (cmd == energy)
      report(cli::cmd_energy(scenario, options));
    else if (cmd == simulate)
      report(cli::cmd_simulate(scenario, options));
    else
      report(cli::cmd_nocsi(scenario, options));
    return 0;
  } catch (const secqos::ParameterError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const secqos::ConfigurationError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const secqos::UnsupportedError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const secqos::Error &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
