#pragma once

#include <stdexcept>
#include <string>

namespace posetbar {

// Invalid input data: malformed posets, non-commuting representations,
// violated preconditions.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input text that does not match one of the JSON schemas.
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A configured size or depth cap was exceeded.
class CapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

// A Las Vegas routine ran out of retries without a certified answer.
class Undecided : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal self-check failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace posetbar
