#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace optkb {

// Raised when a caller breaks a documented precondition (e.g. budget <= 0).
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Text that does not follow a grammar. `line` and `column` are 1-based; 0
// means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// A table is missing a required column or has an unusable header.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(std::string column, std::string message = {});
  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Severity { Warning, Error };

struct Diagnostic {
  std::string source;      // file name or logical input name
  std::size_t line = 0;    // 0 when not tied to a line
  std::string message;
  Severity severity = Severity::Error;

  std::string to_string() const;
  bool operator==(const Diagnostic&) const = default;
};

// Carries the full diagnostic list of an input that was rejected as a whole.
class IngestError : public std::runtime_error {
 public:
  IngestError(std::string message, std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept {
    return diagnostics_;
  }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace optkb
