#pragma once

#include <stdexcept>
#include <string>

namespace tc {

/// Precondition violated by the caller (bad atom count, mismatched states, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Closed-form evolution requested for parameters with delta != omega.
class ResonanceError : public std::domain_error {
 public:
  ResonanceError()
      : std::domain_error(
            "closed-form evolution requires delta == omega; use the oracle for "
            "off-resonant parameters") {}
};

/// A Gauss factor was evaluated where cos(theta*sqrt(m)) vanishes.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed serialized input (state files, reports).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tc
