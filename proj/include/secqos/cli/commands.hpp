// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "secqos/cli/output.hpp"
#include "secqos/cli/scenario.hpp"
#include "secqos/simqueue.hpp"

namespace secqos::cli {

/// Command-line overrides applied on top of the config file.
struct RunOptions {
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> method; ///< "mc" or "quad"
  std::optional<std::int64_t> samples;
  int threads = 0;
};

void apply_overrides(Scenario &scenario, const RunOptions &options);

/// snr, then C_E and r_avg for each message.
CsvTable analyze_table(const Scenario &scenario);

/// Energy curve of scenario.energy_message with closed-form references.
CsvTable energy_table(const Scenario &scenario);

struct SimulationResult {
  SimReport report;
  ExponentFit fit;
  double r_on = 0.0;
  double theta = 0.0;
};

/// Calibrates the ON rate and runs the buffer simulation of scenario.simulate.
SimulationResult run_simulation(const Scenario &scenario);
CsvTable simulation_table(const Scenario &scenario, const SimulationResult &result);

/// No-CSI throughput and energy per bit for every policy in scenario.nocsi.
CsvTable nocsi_table(const Scenario &scenario);

struct CommandOutput {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary; ///< lines printed to stdout
};

CommandOutput cmd_analyze(const Scenario &scenario, const RunOptions &options);
CommandOutput cmd_energy(const Scenario &scenario, const RunOptions &options);
CommandOutput cmd_simulate(const Scenario &scenario, const RunOptions &options);
CommandOutput cmd_nocsi(const Scenario &scenario, const RunOptions &options);

std::vector<std::string> figure_names();

/// The three buffer-simulation scenarios behind fig3 (perfect CSI) or
/// fig11 (no CSI), one per QoS exponent, seeded from `seed`.
std::vector<Scenario> simulation_presets(const std::string &figure, std::uint64_t seed);

/// Runs the preset experiment `figure` (fig2 ... fig12), writing
/// <out>/<figure>.csv and <out>/<figure>.svg.
CommandOutput reproduce(const std::string &figure, const RunOptions &options);

} // namespace secqos::cli
