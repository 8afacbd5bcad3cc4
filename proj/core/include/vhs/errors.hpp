#pragma once

#include <stdexcept>
#include <string>

namespace vhs {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates a documented precondition (bad family parameters,
/// degenerate centralizer, non-unit direction, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical construction failed one of its own tolerances.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace vhs
