#pragma once

#include <stdexcept>
#include <string>

namespace a1lab {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (wrong arity, non-homogeneous polynomial, bad type).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold (point off the variety, point on D).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested feature is outside the supported range (r > 4, characteristic 2 conics, k != 1).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An internal identity that must hold by construction failed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the hard point cap.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

/// Reduction of a rational pair modulo p is impossible (denominator divisible by p).
class ReductionError : public Error {
 public:
  using Error::Error;
};

/// A construction is impossible for the given parameters (e.g. char | k for covers).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Random generation exhausted its retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// Text or JSON could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace a1lab
