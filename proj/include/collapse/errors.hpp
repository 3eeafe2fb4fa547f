#pragma once

#include <stdexcept>
#include <string>

namespace collapse {

/// Input lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A relative uncertainty or algebraic inverse would divide by zero.
class DivisionByZeroError : public DomainError {
public:
  using DomainError::DomainError;
};

/// An asymptotic formula was requested outside the regime where it holds.
class OutOfRegimeError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Adaptive quadrature failed to reach the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double estimated_error)
      : std::runtime_error(what), estimated_error_(estimated_error) {}

  double estimated_error() const noexcept { return estimated_error_; }

private:
  double estimated_error_;
};

/// A structured input violates one of its invariants. `field()` names it.
class ValidationError : public std::invalid_argument {
public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class InsufficientDataError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class LengthMismatchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace collapse
