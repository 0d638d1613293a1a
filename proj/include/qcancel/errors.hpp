#pragma once

#include <stdexcept>
#include <string>

namespace qcancel {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated a documented precondition (mismatched orders, bad index).
class UsageError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Element arithmetic was requested in a ring with a non-root-of-unity parameter.
class NonTorsionError : public Error {
 public:
  using Error::Error;
};

/// The computation is well defined but outside what the library can do
/// (non-rectangular center, Weyl factor in a T_s analysis, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or index bound was exceeded.
class BoundExceededError : public Error {
 public:
  using Error::Error;
};

class InvalidWitnessError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Ring-spec input is malformed or violates an invariant.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcancel
