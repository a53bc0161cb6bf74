#include "optkb/term.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace optkb {

namespace {
constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";

constexpr std::array<std::pair<Datatype, std::string_view>, 4> kDatatypes{{
    {Datatype::String, "http://www.w3.org/2001/XMLSchema#string"},
    {Datatype::Integer, "http://www.w3.org/2001/XMLSchema#integer"},
    {Datatype::Double, "http://www.w3.org/2001/XMLSchema#double"},
    {Datatype::Date, "http://www.w3.org/2001/XMLSchema#date"},
}};

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace

std::string_view datatype_iri(Datatype dt) {
  return kDatatypes[static_cast<std::size_t>(dt)].second;
}

std::optional<Datatype> datatype_from_iri(std::string_view iri) {
  for (const auto& [dt, name] : kDatatypes) {
    if (name == iri) return dt;
  }
  return std::nullopt;
}

std::string_view datatype_name(Datatype dt) {
  return datatype_iri(dt).substr(kXsd.size());
}

std::string format_double(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "INF" : "-INF";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  std::string out(buf.data(), end);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::optional<double> parse_double(std::string_view text) {
  if (text == "INF" || text == "+INF") {
    return std::numeric_limits<double>::infinity();
  }
  if (text == "-INF") return -std::numeric_limits<double>::infinity();
  if (text == "NaN") return std::numeric_limits<double>::quiet_NaN();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value, std::chars_format::general);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  // from_chars accepts "inf"/"nan" spellings; only the XSD ones are valid.
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<std::int64_t> parse_integer(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

bool is_valid_date(std::string_view text) {
  auto digits = [&](std::size_t from, std::size_t n) {
    for (std::size_t i = from; i < from + n; ++i) {
      if (text[i] < '0' || text[i] > '9') return false;
    }
    return true;
  };
  if (text.size() == 4) return digits(0, 4);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
  if (!digits(0, 4) || !digits(5, 2) || !digits(8, 2)) return false;
  const int year = std::stoi(std::string(text.substr(0, 4)));
  const int month = std::stoi(std::string(text.substr(5, 2)));
  const int day = std::stoi(std::string(text.substr(8, 2)));
  if (month < 1 || month > 12 || day < 1) return false;
  static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30,
                                             31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  const int limit = kDays[month - 1] + (month == 2 && leap ? 1 : 0);
  return day <= limit;
}

Term Term::iri(std::string value) {
  return Term(TermKind::Iri, std::move(value), Datatype::String);
}

Term Term::string(std::string value) {
  return Term(TermKind::Literal, std::move(value), Datatype::String);
}

Term Term::integer(std::int64_t value) {
  return Term(TermKind::Literal, std::to_string(value), Datatype::Integer);
}

Term Term::real(double value) {
  return Term(TermKind::Literal, format_double(value), Datatype::Double);
}

Term Term::date(std::string value) {
  return literal(std::move(value), Datatype::Date);
}

Term Term::literal(std::string lexical, Datatype dt) {
  bool ok = true;
  switch (dt) {
    case Datatype::String:
      break;
    case Datatype::Integer:
      ok = parse_integer(lexical).has_value();
      break;
    case Datatype::Double:
      ok = parse_double(lexical).has_value();
      break;
    case Datatype::Date:
      ok = is_valid_date(lexical);
      break;
  }
  if (!ok) {
    throw std::invalid_argument("\"" + lexical + "\" is not a valid xsd:" +
                                std::string(datatype_name(dt)));
  }
  return Term(TermKind::Literal, std::move(lexical), dt);
}

std::optional<std::int64_t> Term::as_integer() const {
  if (kind_ != TermKind::Literal || datatype_ != Datatype::Integer) {
    return std::nullopt;
  }
  return parse_integer(value_);
}

std::optional<double> Term::as_number() const {
  if (kind_ != TermKind::Literal) return std::nullopt;
  if (datatype_ == Datatype::Integer) {
    if (auto v = parse_integer(value_)) return static_cast<double>(*v);
    return std::nullopt;
  }
  if (datatype_ == Datatype::Double) return parse_double(value_);
  return std::nullopt;
}

std::string escape_literal(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Term::to_ntriples() const {
  if (kind_ == TermKind::Iri) return "<" + value_ + ">";
  std::string out = "\"" + escape_literal(value_) + "\"^^<";
  out += datatype_iri(datatype_);
  out += ">";
  return out;
}

std::string Triple::to_ntriples() const {
  return subject.to_ntriples() + " " + predicate.to_ntriples() + " " +
         object.to_ntriples() + " .";
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value());
  h = mix(h, static_cast<std::size_t>(t.kind()));
  return mix(h, static_cast<std::size_t>(t.datatype()));
}

std::size_t TripleHash::operator()(const Triple& t) const noexcept {
  TermHash th;
  return mix(mix(th(t.subject), th(t.predicate)), th(t.object));
}

}  // namespace optkb
