#pragma once

#include <stdexcept>
#include <string>

namespace chemotaxis {

/// Argument outside the mathematical domain of a formula (e.g. p <= 1 in M*).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A model parameter violates the admissible ranges (m, alpha, gamma, mu, nu > 0; a, b, beta >= 0).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller broke a documented precondition (negative density, inconsistent grids, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chemotaxis
