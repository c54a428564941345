#pragma once

#include <stdexcept>
#include <string>

namespace parp {

// Base type for all toolkit errors. Subtypes let the CLI map failures to
// stable exit codes (runtime failure vs usage/config problems).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain data violates an invariant (bad bbox, unknown class name, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A config file is malformed or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace parp
