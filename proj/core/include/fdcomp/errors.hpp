#pragma once

#include <stdexcept>
#include <string>

namespace fdcomp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration does not fit the data it is applied to
/// (e.g. a frame too short for the requested decomposition depth).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Length or layout mismatch between two objects that must agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A metric is undefined for its input, such as PRD against a zero-norm signal.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

/// Regression input cannot determine the model.
class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

/// Requested rate is at or beyond the residual-SI capacity limit.
class InfeasibleRateError : public Error {
 public:
  using Error::Error;
};

/// No admissible point exists for an optimization or search.
class InfeasibilityError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented invariant. `field()` names the offending
/// input (a config key such as "objective.lambda" or a parameter name).
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace fdcomp
