#pragma once

#include <stdexcept>
#include <string>

namespace qmd {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user input: malformed files, inconsistent settings, bad arguments.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Dense simulation would exceed supported sizes.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed (SCF divergence, singular Lanczos ratio, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmd
