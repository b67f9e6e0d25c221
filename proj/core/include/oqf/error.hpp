#pragma once

#include <stdexcept>
#include <string>

namespace oqf {

/// Bad input: violated preconditions, malformed files, unknown options.
class InvalidArgument : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation ran but its result cannot be trusted (singular system,
/// residual above threshold, integer overflow).
class NumericalFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace oqf
