#pragma once

#include <stdexcept>
#include <string>

#include "connsum/face.hpp"

namespace connsum {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (bad index, mismatched vertex sets, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold. `witness` names
/// a face demonstrating the violation when one exists.
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& what, Face witness = Face{}) : Error(what), witness_(witness) {}
  Face witness() const { return witness_; }

 private:
  Face witness_;
};

/// Text input could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace connsum
