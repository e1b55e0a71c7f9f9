#pragma once

#include <stdexcept>
#include <string>

namespace ekscat {

// Caller passed something outside an operation's domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Allocation or other resource exhaustion.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reading or writing an output failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity that must always hold did not. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ekscat
