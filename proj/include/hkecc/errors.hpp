#pragma once

#include <stdexcept>
#include <string>

namespace hkecc {

/// A caller broke an operation's precondition (width mismatch, bad range).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Text input (hex literal, curve file) could not be parsed.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for errors that come from the mathematics rather than the caller's
/// syntax: zero has no inverse, a point is not on the curve, and so on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NonInvertible : public DomainError {
 public:
  NonInvertible() : DomainError("zero has no multiplicative inverse") {}
};

class InvalidPoint : public DomainError {
 public:
  using DomainError::DomainError;
};

class DegenerateBasePoint : public DomainError {
 public:
  DegenerateBasePoint() : DomainError("base point has x = 0; projective ladder undefined") {}
};

}  // namespace hkecc
