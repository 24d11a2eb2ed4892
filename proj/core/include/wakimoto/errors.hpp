#pragma once

#include <stdexcept>
#include <string>

namespace wakimoto {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Inputs belong to different objects (e.g. elements of two algebras).
class StructuralError : public Error {
public:
  using Error::Error;
};

/// An input violates a documented precondition (wrong mode lattice, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Derived data failed an internal consistency check.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// The requested computation does not fit in the configured truncation.
class TruncationError : public Error {
public:
  using Error::Error;
};

/// Malformed textual input (rationals, config files).
class ParseError : public Error {
public:
  using Error::Error;
};

}  // namespace wakimoto
