#pragma once

#include <stdexcept>
#include <string>

namespace selfsim {

/// Argument outside the mathematical domain of an operation (t <= 0, L <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hypothesis gate failed, e.g. a non-C2 datum handed to the curvature solver.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Explicit solver left the admissible band; the message carries step, time and node.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration or unknown catalog id.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace selfsim
