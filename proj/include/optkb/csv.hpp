#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace optkb::csv {

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// RFC-4180: quoted fields may contain separators, doubled quotes and line
// breaks; CRLF and LF line endings both accepted. Empty lines are skipped.
// Throws ParseError on an unterminated quoted field.
std::vector<Record> parse(std::string_view text, char separator = ',');

// Quotes a field only when needed.
std::string format_field(std::string_view field, char separator = ',');
std::string format_row(const std::vector<std::string>& fields,
                       char separator = ',');

}  // namespace optkb::csv
