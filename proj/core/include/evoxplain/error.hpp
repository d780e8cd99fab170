#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evoxplain {

enum class ErrorKind {
  Input,      // malformed or mismatched input data
  Parameter,  // invalid configuration value
  Transport,  // remote endpoint unreachable or timed out
  Remote,     // remote endpoint answered with a non-200 status
  Protocol,   // remote payload violates the wire contract
  Numeric,    // numerical failure (e.g. singular system)
  Refused,    // request exceeds a cost guard
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers how to react.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same kind, message prefixed with `context: `.
  Error with_context(std::string_view context) const {
    return Error(kind_, std::string(context) + ": " + what());
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace evoxplain
