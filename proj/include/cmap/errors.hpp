#pragma once

#include <stdexcept>

namespace cmap {

/// Invalid or unsupported system parameters. The CLI maps this to exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structural property the delivery construction relies on did not hold,
/// e.g. a generated XOR term was already served by an earlier transmission.
class SchemeInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cmap
