#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace onefac {

// Base of every error thrown by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps the subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// A construction would exceed the configured group order cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its contract (non-normal subgroup,
// non-isomorphism, covering condition violated, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The input is not of the shape Q x H (Q a nontrivial 2-group, H odd).
class OutOfScopeError : public Error {
 public:
  using Error::Error;
};

class NotDecomposableError : public OutOfScopeError {
 public:
  using OutOfScopeError::OutOfScopeError;
};

class NotConnectedError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// The exact solver proved that no 1-factorization exists.
class NotFactorizableError : public Error {
 public:
  using Error::Error;
};

class CompletionFailedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A JSON document does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace onefac
