// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace ratemig {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A model or numerical parameter lies outside its admissible range.
/// The message names the parameter and the range.
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

/// A coordinate lies outside the domain of the object being evaluated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Arguments that must refer to the same discretization do not.
class InconsistentInputError : public Error {
 public:
  using Error::Error;
};

/// A configuration document was rejected; the message names the failing key.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Banded elimination met a pivot too small relative to the matrix scale.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// A root search ran out of iterations; carries the last iterate so callers
/// can log or restart from it.
class RootFailureError : public Error {
 public:
  RootFailureError(const std::string& what, double last_iterate, double last_residual)
      : Error(what), last_iterate_(last_iterate), last_residual_(last_residual) {}

  double last_iterate() const noexcept { return last_iterate_; }
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_iterate_;
  double last_residual_;
};

}  // namespace ratemig
