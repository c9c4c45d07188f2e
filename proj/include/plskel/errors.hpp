#pragma once

#include <stdexcept>
#include <string>

namespace plskel {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, non-finite weights, shape mismatches.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input dimension other than 1 or 2.
class UnsupportedDimension : public InputError {
 public:
  using InputError::InputError;
};

/// Query point outside the bounded input domain.
class OutOfDomain : public InputError {
 public:
  using InputError::InputError;
};

/// Degenerate or non-simple polygon.
class InvalidGeometry : public Error {
 public:
  using Error::Error;
};

/// Broken structural invariant (mismatched tessellations, bounds, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

}  // namespace plskel
