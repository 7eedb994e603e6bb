#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace latgame {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (odd side, p > 1, NaN payoff, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Valid input the operation does not model (neutral strategies, d != 2 images).
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Internal invariant broken; indicates misuse of a precondition-bearing call.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  // line is 1-based; 0 means "end of input" (e.g. a missing key).
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace latgame
