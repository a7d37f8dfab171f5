#pragma once

#include <stdexcept>
#include <string>

namespace coxmask {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad Coxeter matrix, bad word, non-reduced expression.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A floating-point coordinate fell inside the sign margin.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A search exceeded the system's max_length guard.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A required Bruhat relation (y <= x <= w) does not hold.
class OrderingError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Seeing one of these is a bug.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The matching has no move on this relative mask (it is all ones).
class NoMoveError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxmask
