// SPDX-License-Identifier: Apache-2.0
#include "secqos/expectation.hpp"

#include "secqos/errors.hpp"

namespace secqos {

void validate(const ExpectationMethod &method, const FadingScenario &scenario) {
  scenario.validate();
  if (const auto *mc = std::get_if<MonteCarlo>(&method)) {
    if (mc->samples < 2)
      throw ParameterError("Monte Carlo needs at least 2 samples, got " +
                           std::to_string(mc->samples));
    return;
  }
  const auto &gl = std::get<GaussLaguerre>(method);
  if (gl.nodes_per_axis < 16)
    throw ParameterError("Gauss-Laguerre needs at least 16 nodes per axis, got " +
                         std::to_string(gl.nodes_per_axis));
  if (!scenario.independent_exponential())
    throw ConfigurationError("Gauss-Laguerre quadrature requires independent exponential fading "
                             "(power_correlation = 0), got power_correlation = " +
                             std::to_string(scenario.power_correlation));
}

std::string describe(const ExpectationMethod &method) {
  if (const auto *mc = std::get_if<MonteCarlo>(&method))
    return "monte-carlo samples=" + std::to_string(mc->samples) +
           " seed=" + std::to_string(mc->seed);
  return "gauss-laguerre nodes=" + std::to_string(std::get<GaussLaguerre>(method).nodes_per_axis);
}

} // namespace secqos
