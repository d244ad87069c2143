#pragma once

#include <stdexcept>
#include <string>

namespace dp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid geometry input (non-unit-speed parameterization, degenerate metric).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Invalid parameter combination (a*gamma_max >= 1, beta >= 1, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the validity regime of an estimate (a/beta <= 2, ...).
class RegimeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// A numerical routine failed to reach its accuracy target.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// An iterative solver did not converge within its budget.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace dp
