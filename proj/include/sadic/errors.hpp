#pragma once

#include <stdexcept>
#include <string>

namespace sadic {

/// Malformed or out-of-alphabet input. The CLI maps this to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An operation was called on a value that does not satisfy its precondition
/// (e.g. conjugating a morphism that is not left proper).
struct PreconditionError : std::logic_error {
  using std::logic_error::logic_error;
};

/// An index or length beyond what a table or horizon covers.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// A finite computation could not reach a verdict within its limits.
struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sadic
