#pragma once

#include <stdexcept>
#include <string>

namespace racetrack {

/// Base of every failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter or configuration value outside its admissible range.
/// `field()` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Caller broke a documented precondition (length mismatch, negative input...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Fixed-point iteration ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual, int iterations)
      : Error(what), residual_(residual), iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

/// NaN or overflow inside a kernel sum. `equation()` names the offending equation.
class NumericalError : public Error {
 public:
  NumericalError(std::string equation, const std::string& what)
      : Error(what), equation_(std::move(equation)) {}
  const std::string& equation() const noexcept { return equation_; }

 private:
  std::string equation_;
};

/// Root bracket could not be established.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Explicit time step blew up.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// A transfer scheme whose payments and compensations do not balance,
/// or whose transfers have the wrong sign.
class BalanceError : public Error {
 public:
  using Error::Error;
};

}  // namespace racetrack
