#pragma once

#include <stdexcept>
#include <string>

namespace sqfib {

// Malformed or out-of-contract input. Maps to CLI exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size bound would be exceeded. Maps to CLI exit code 3.
class BoundExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A mathematical invariant that must hold did not. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace sqfib
