#include "optkb/ntriples.hpp"

#include <algorithm>
#include <cstdint>

namespace optkb {

namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class LineParser {
 public:
  explicit LineParser(std::string_view line) : text_(line) {}

  Triple parse() {
    skip_ws();
    Term subject = parse_subject_or_predicate("subject");
    require_ws();
    Term predicate = parse_subject_or_predicate("predicate");
    require_ws();
    Term object = parse_object();
    skip_ws();
    if (at_end() || peek() != '.') fail("expected '.' at end of triple");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected text after '.'");
    return {std::move(subject), std::move(predicate), std::move(object)};
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, 0, pos_ + 1);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) {
      ++pos_;
    }
  }

  void require_ws() {
    const auto before = pos_;
    skip_ws();
    if (pos_ == before) fail("expected whitespace between terms");
  }

  Term parse_subject_or_predicate(const char* role) {
    if (at_end()) fail(std::string("missing ") + role);
    if (peek() == '_') fail("blank nodes are not supported");
    if (peek() != '<') fail(std::string("expected IRI for ") + role);
    return parse_iri();
  }

  Term parse_iri() {
    const auto start = ++pos_;
    const auto close = text_.find('>', start);
    if (close == std::string_view::npos) fail("unterminated IRI");
    std::string value(text_.substr(start, close - start));
    if (!is_absolute_iri(value)) fail("not an absolute IRI: " + value);
    pos_ = close + 1;
    return Term::iri(std::move(value));
  }

  Term parse_object() {
    if (at_end()) fail("missing object");
    if (peek() == '<') return parse_iri();
    if (peek() == '_') fail("blank nodes are not supported");
    if (peek() != '"') fail("expected IRI or literal for object");
    std::string lexical = parse_quoted();
    Datatype dt = Datatype::String;
    if (!at_end() && peek() == '@') fail("language-tagged literals are not supported");
    if (text_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (at_end() || peek() != '<') fail("expected datatype IRI after ^^");
      const auto where = pos_;
      Term dt_iri = parse_iri();
      auto known = datatype_from_iri(dt_iri.value());
      if (!known) {
        pos_ = where;
        fail("unsupported datatype <" + dt_iri.value() + ">");
      }
      dt = *known;
    }
    try {
      return Term::literal(std::move(lexical), dt);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  std::string parse_quoted() {
    ++pos_;
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string literal");
      const char c = peek();
      if (c == '"') {
        ++pos_;
        return out;
      }
      if (c != '\\') {
        out += c;
        ++pos_;
        continue;
      }
      ++pos_;
      if (at_end()) fail("dangling escape");
      const char e = peek();
      ++pos_;
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case '\'': out += '\''; break;
        case 'u': append_utf8(out, hex(4)); break;
        case 'U': append_utf8(out, hex(8)); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
  }

  std::uint32_t hex(std::size_t digits) {
    if (pos_ + digits > text_.size()) fail("truncated unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char c = text_[pos_++];
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("invalid hex digit in unicode escape");
    }
    if (cp > 0x10FFFF) fail("code point out of range");
    return cp;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string export_ntriples(const Store& store) {
  const auto& dict = store.dictionary();
  std::vector<std::string> lines;
  lines.reserve(store.size());
  // Serialize each distinct term once.
  std::vector<std::string> cache(dict.size());
  std::vector<bool> cached(dict.size(), false);
  auto text = [&](TermId id) -> const std::string& {
    if (!cached[id]) {
      cache[id] = dict.term(id).to_ntriples();
      cached[id] = true;
    }
    return cache[id];
  };
  store.for_each_match({kAnyTerm, kAnyTerm, kAnyTerm},
                       [&](const IdTriple& t) {
                         std::string line = text(t[0]);
                         line += ' ';
                         line += text(t[1]);
                         line += ' ';
                         line += text(t[2]);
                         line += " .";
                         lines.push_back(std::move(line));
                       });
  std::sort(lines.begin(), lines.end());
  std::string out;
  std::size_t total = 0;
  for (const auto& l : lines) total += l.size() + 1;
  out.reserve(total);
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

Triple parse_ntriples_line(std::string_view line) {
  return LineParser(line).parse();
}

ImportResult import_ntriples(std::string_view text, bool strict) {
  ImportResult result;
  std::vector<Triple> triples;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    try {
      triples.push_back(parse_ntriples_line(line));
    } catch (const ParseError& e) {
      if (strict) throw ParseError(e.detail(), line_no, e.column());
      result.diagnostics.push_back(
          {"", line_no, "column " + std::to_string(e.column()) + ": " + e.detail(),
           Severity::Error});
    }
    if (end == text.size()) break;
  }
  result.store.insert_batch(triples);
  return result;
}

}  // namespace optkb
