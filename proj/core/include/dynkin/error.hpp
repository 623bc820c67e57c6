#pragma once

#include <stdexcept>
#include <string>

namespace dynkin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (bad parameter, wrong shape).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A document or hand-built instance does not match the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed: primal/dual disagreement, an
/// unreachable classification branch. Indicates a bug, not bad input.
class ModelViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace dynkin
