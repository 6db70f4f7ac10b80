#pragma once

#include <stdexcept>
#include <string>

namespace grasslab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different fields.
class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine was asked to run above its configured size bound.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// A map failed a hypothesis that a reconstruction step relies on.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace grasslab
