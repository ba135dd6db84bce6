#pragma once

#include <stdexcept>
#include <string>

namespace medprior {

// Invalid argument to a public operation: out-of-domain parameter, malformed
// input text, precondition violation by the caller.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure after honest effort: iteration cap exhausted, precision
// escalation exhausted. Carries diagnostics in the message.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Violation of an invariant the mathematics guarantees (singular moment
// matrix, mixing weight outside [0,1]). Indicates a bug or a precision
// failure, never a caller mistake.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace medprior
