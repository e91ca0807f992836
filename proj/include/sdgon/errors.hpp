#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sdgon {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON shape, unknown ids, bad values).
class ParseError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public Error {
 public:
  using Error::Error;
};

/// A vertex or edge id that does not exist in the graph it is looked up in.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

/// A set was fired that does not satisfy the validity condition.
/// `index` is the 1-based position inside a script, or 0 for a lone firing.
class InvalidSetError : public Error {
 public:
  InvalidSetError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Raised by the enumeration oracle when its state budget runs out.
class StateCapExceeded : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class MissingVariableError : public Error {
 public:
  using Error::Error;
};

/// An ILP assignment violates the inequalities the staircase schedule needs.
class InequalityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace sdgon
