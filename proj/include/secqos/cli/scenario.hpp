// SPDX-License-Identifier: Apache-2.0
//
// Experiment description loaded from a JSON config file.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "secqos/channel.hpp"
#include "secqos/errors.hpp"
#include "secqos/expectation.hpp"
#include "secqos/nocsi.hpp"
#include "secqos/sources.hpp"

namespace secqos::cli {

/// Malformed or inconsistent config; the message starts with the field path.
class ConfigError : public ConfigurationError {
public:
  using ConfigurationError::ConfigurationError;
};

struct SimulateSpec {
  Message message = Message::Confidential1;
  double theta = 1.0;
  bool no_csi = false;
  double snr = 1.0;
  std::int64_t horizon = 10'000'000;
  std::vector<double> thresholds; ///< empty: default grid for theta
  int threshold_points = 40;
  double threshold_span = 2.0; ///< grid reaches span / theta
  std::vector<double> delay_grid;
  FixedRatePolicy policy = FixedRatePolicy::coefficient(1.0);
  double gamma = 1.0; ///< no-CSI fading
};

struct NoCsiSpec {
  double gamma = 1.0;
  double theta = 0.5;
  std::vector<FixedRatePolicy> policies{FixedRatePolicy::coefficient(1.0)};
};

struct Scenario {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  SourceModel source = ConstantRate{};
  FadingScenario fading;
  PowerSplit split;
  std::array<double, 3> theta{1.0, 1.0, 1.0}; ///< indexed by Message
  std::vector<double> snr;
  ExpectationMethod method = MonteCarlo{};
  Message energy_message = Message::Confidential1;
  SimulateSpec simulate;
  NoCsiSpec nocsi;

  double theta_of(Message m) const { return theta[static_cast<std::size_t>(m)]; }
};

Scenario parse_scenario(const std::string &json_text);
Scenario load_scenario(const std::filesystem::path &path);

/// "common", "user1", "user2".
std::string message_name(Message m);
Message parse_message(const std::string &name, const std::string &path);

/// n points from lo to hi, evenly spaced in log10.
std::vector<double> log_grid(double lo, double hi, int n);
/// Linear snr values for n points evenly spaced in dB.
std::vector<double> db_grid(double db_lo, double db_hi, int n);

} // namespace secqos::cli
