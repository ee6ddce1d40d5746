#pragma once

#include <stdexcept>

namespace afftrace {

// Raised when an input is structurally degenerate (a convex gauge vanishing
// on a direction, a test function with a vanishing directional norm).
struct DegeneracyError : std::domain_error {
  using std::domain_error::domain_error;
};

// Raised by the CLI/suite layer for malformed configurations.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace afftrace
