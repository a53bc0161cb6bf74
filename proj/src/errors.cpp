#include "optkb/errors.hpp"

#include <utility>

namespace optkb {

namespace {
std::string located(const std::string& message, std::size_t line,
                    std::size_t column) {
  if (line == 0) return message;
  std::string out = "line " + std::to_string(line);
  if (column != 0) out += ", column " + std::to_string(column);
  return out + ": " + message;
}
}  // namespace

ParseError::ParseError(std::string message, std::size_t line,
                       std::size_t column)
    : std::runtime_error(located(message, line, column)),
      line_(line),
      column_(column),
      detail_(std::move(message)) {}

SchemaError::SchemaError(std::string column, std::string message)
    : std::runtime_error(message.empty() ? "missing required column: " + column
                                         : message),
      column_(std::move(column)) {}

IngestError::IngestError(std::string message,
                         std::vector<Diagnostic> diagnostics)
    : std::runtime_error(std::move(message)),
      diagnostics_(std::move(diagnostics)) {}

std::string Diagnostic::to_string() const {
  std::string out = severity == Severity::Error ? "error" : "warning";
  out += ": ";
  if (!source.empty()) out += source + ": ";
  if (line != 0) out += "line " + std::to_string(line) + ": ";
  return out + message;
}

}  // namespace optkb
