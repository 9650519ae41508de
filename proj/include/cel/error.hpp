#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cel {

// Base of every error the engine reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input. `line` and `column` are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A symbol (class, role or individual) that is not part of the vocabulary.
class UnknownIriError : public Error {
 public:
  explicit UnknownIriError(std::string symbol, const std::string& what = "unknown IRI");

  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

// Input that is well-formed but violates a documented invariant.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message);

  // Name of the offending field, empty when not attributable to one.
  const std::string& field() const noexcept { return field_; }
  // The message without the field prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

}  // namespace cel
