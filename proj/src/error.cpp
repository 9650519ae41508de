#include "cel/error.hpp"

namespace cel {

namespace {
std::string with_position(const std::string& message, std::size_t line, std::size_t column) {
  if (line == 0) return message;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + message;
}
}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(with_position(message, line, column)), line_(line), column_(column) {}

UnknownIriError::UnknownIriError(std::string symbol, const std::string& what)
    : Error(what + ": " + symbol), symbol_(std::move(symbol)) {}

ValidationError::ValidationError(std::string field, const std::string& message)
    : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)), message_(message) {}

}  // namespace cel
