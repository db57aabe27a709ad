#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace freelink {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed diagram text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// An operation was called on an input outside its domain (pure crossings
// where none are allowed, a tangle in bad condition, an unknown crossing...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A move site does not match the diagram it is applied to.
class MoveError : public Error {
 public:
  using Error::Error;
};

}  // namespace freelink
