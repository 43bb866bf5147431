#pragma once

#include <stdexcept>
#include <string>

namespace arena {

/// Base class for every error raised by the arena library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configuration cannot be run (pool parity, grid resolution, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A strength lies where the prior density vanishes.
class OutOfSupportError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Observed data has zero likelihood everywhere on the grid.
class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

/// The requested parameter cannot be identified from this kind of data.
class NonIdentifiableError : public Error {
 public:
  using Error::Error;
};

/// The 1-1 fluctuation statistic implies fluctuations too large to resolve.
class UnresolvedFluctuationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace arena
