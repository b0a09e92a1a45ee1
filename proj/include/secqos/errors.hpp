// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace secqos {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid model parameters (probabilities out of range, degenerate chains).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// Inconsistent combination of otherwise valid settings.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// A closed form left the representable range.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Root bracketing or bisection failed.
class SolverError : public Error {
public:
  using Error::Error;
};

/// Low-SNR curve fit could not produce trustworthy derivatives.
class FitError : public Error {
public:
  using Error::Error;
};

/// Exponent fit range has too few usable thresholds.
class RangeError : public Error {
public:
  using Error::Error;
};

/// Requested source family is not covered by the selected regime.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

} // namespace secqos
