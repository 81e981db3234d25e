#pragma once

#include <stdexcept>
#include <string>

namespace tfwd {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Radial grid too small or malformed.
class GridError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative method failed to converge.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unknown certificate name or bad certificate request.
class RegistryError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file (density table or run configuration).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Non-finite value produced inside the minimizer.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tfwd
