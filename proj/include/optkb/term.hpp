#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace optkb {

enum class TermKind : std::uint8_t { Iri, Literal };

// The only literal datatypes the knowledge base accepts.
enum class Datatype : std::uint8_t { String, Integer, Double, Date };

std::string_view datatype_iri(Datatype dt);
std::optional<Datatype> datatype_from_iri(std::string_view iri);
std::string_view datatype_name(Datatype dt);

// Shortest round-trip decimal form; always contains '.', 'e', or is INF/NaN,
// so that a double literal never reads back as an integer.
std::string format_double(double value);
std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_integer(std::string_view text);
// Accepts YYYY or YYYY-MM-DD with a valid month/day.
bool is_valid_date(std::string_view text);

// An IRI or a typed literal. Equality is lexical: two literals are the same
// term iff their lexical forms and datatypes match.
class Term {
 public:
  Term() = default;

  static Term iri(std::string value);
  static Term string(std::string value);
  static Term integer(std::int64_t value);
  static Term real(double value);
  // Throws std::invalid_argument when `value` is not a valid date.
  static Term date(std::string value);
  // Validates the lexical form against `dt`; throws std::invalid_argument.
  static Term literal(std::string lexical, Datatype dt);

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
  bool is_literal() const noexcept { return kind_ == TermKind::Literal; }
  const std::string& value() const noexcept { return value_; }
  // Meaningful for literals only.
  Datatype datatype() const noexcept { return datatype_; }

  std::optional<std::int64_t> as_integer() const;
  // Integers and doubles both convert.
  std::optional<double> as_number() const;

  // N-Triples serialization: <iri> or "lexical"^^<datatype-iri>.
  std::string to_ntriples() const;

  bool operator==(const Term& other) const = default;
  auto operator<=>(const Term& other) const = default;

 private:
  Term(TermKind kind, std::string value, Datatype dt)
      : kind_(kind), value_(std::move(value)), datatype_(dt) {}

  TermKind kind_ = TermKind::Iri;
  std::string value_;
  Datatype datatype_ = Datatype::String;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  bool operator==(const Triple&) const = default;
  auto operator<=>(const Triple&) const = default;

  std::string to_ntriples() const;
};

// Backslash escapes for the lexical part of a literal.
std::string escape_literal(std::string_view raw);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const noexcept;
};

}  // namespace optkb
