#pragma once

#include <stdexcept>
#include <string>

namespace isoclus {

/// Malformed geometry (open loop, inconsistent arc, self-intersection).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A construction hypothesis does not hold. The message names the inequality.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnsupportedOperation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isoclus
