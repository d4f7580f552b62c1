#pragma once

#include <stdexcept>
#include <string>

namespace satfake {

/// Base class for every error raised by the library. Each subclass maps to
/// one process exit code in the command-line front end.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing or unreadable files.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Input that parses but violates a documented invariant (duplicate ids,
/// mixed embedding dimensions, fold misalignment, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Malformed structured input (feature tables, model files, prediction files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerical routines that fail to reach their tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent configuration: unknown catalog entries, missing constituents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Operations whose precondition requires a non-empty document.
class EmptyDocumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace satfake
