#include "optkb/csv.hpp"

#include "optkb/errors.hpp"

namespace optkb::csv {

std::vector<Record> parse(std::string_view text, char separator) {
  std::vector<Record> records;
  Record current;
  std::string field;
  std::size_t line = 1;
  current.line = 1;
  bool in_quotes = false;
  bool field_started = false;  // distinguishes "" from an empty line
  std::size_t quote_line = 0;

  auto end_field = [&] {
    current.fields.push_back(std::move(field));
    field.clear();
  };
  auto end_record = [&] {
    if (field_started || !current.fields.empty() || !field.empty()) {
      end_field();
      records.push_back(std::move(current));
    }
    current = Record{};
    current.line = line;
    field_started = false;
  };

  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
    text.remove_prefix(3);
  }

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
      field_started = true;
      quote_line = line;
    } else if (c == separator) {
      field_started = true;
      end_field();
    } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
      continue;
    } else if (c == '\n') {
      ++line;
      end_record();
    } else {
      field_started = true;
      field += c;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field", quote_line);
  end_record();
  return records;
}

std::string format_field(std::string_view field, char separator) {
  const bool needs_quotes =
      field.find_first_of(std::string{'"', '\n', '\r', separator}) !=
      std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_row(const std::vector<std::string>& fields,
                       char separator) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += separator;
    out += format_field(fields[i], separator);
  }
  out += "\r\n";
  return out;
}

}  // namespace optkb::csv
