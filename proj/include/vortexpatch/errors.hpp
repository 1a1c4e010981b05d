#pragma once

#include <stdexcept>
#include <string>

namespace vortexpatch {

/// Malformed input text: bad JSON, unknown keys, wrong types. The message
/// names the offending key path.
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A region or patch violates its structural invariants (self-intersection,
/// degenerate loop, bad nesting).
class ValidationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside an operation's domain (non-positive radius,
/// off-origin disk where the origin is required, zero mass, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A time step produced an invalid boundary (marker collision or loop
/// self-intersection). The patch passed to the step is left untouched.
class StepRejected : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace vortexpatch
