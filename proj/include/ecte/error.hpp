#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecte {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The tree or budget violates an Instance invariant.
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(const std::string& name) : Error("unknown node '" + name + "'") {}
};

/// A vertex sequence that is not a closed walk from the root.
class InvalidRoute : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An exhaustive routine was asked to run above its size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A routine's precondition does not hold for this input (wrong branch,
/// ties present, epsilon out of range, ...).
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace ecte
