#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

#include "optkb/errors.hpp"
#include "optkb/oql.hpp"
#include "optkb/vocabulary.hpp"

namespace optkb::oql {

Expr Expr::variable(std::string name) {
  Expr e;
  e.op = ExprOp::Var;
  e.var = std::move(name);
  return e;
}

Expr Expr::literal(Term value) {
  Expr e;
  e.op = ExprOp::Const;
  e.constant = std::move(value);
  return e;
}

Expr Expr::node(ExprOp op, std::vector<Expr> args) {
  Expr e;
  e.op = op;
  e.args = std::move(args);
  return e;
}

namespace {

void collect_vars(const Expr& e, std::vector<std::string>& out) {
  if (e.op == ExprOp::Var) {
    for (const auto& v : out) {
      if (v == e.var) return;
    }
    out.push_back(e.var);
  }
  for (const auto& a : e.args) collect_vars(a, out);
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool is_local_char(char c) {
  return is_name_char(c) || c == '.' || c == '/' || c == '%' || c == ':';
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {
    for (const auto& p : vocab::standard_prefixes()) {
      prefixes_[std::string(p.name)] = std::string(p.iri);
    }
  }

  Query parse() {
    Query q;
    skip_space();
    while (keyword_ahead("PREFIX")) parse_prefix();
    expect_keyword("SELECT");
    if (keyword_ahead("DISTINCT")) q.distinct = true;

    std::vector<std::pair<std::string, Position>> selected;
    skip_space();
    while (peek() == '?' || peek() == '$') {
      const Position at = pos_;
      selected.emplace_back(parse_var_name(), at);
      skip_space();
    }
    if (selected.empty()) fail("expected a variable after SELECT");

    expect_keyword("WHERE");
    expect_char('{', "'{'");
    std::vector<std::pair<std::string, Position>> filter_vars;
    bool need_separator = false;
    skip_space();
    while (!at_end() && peek() != '}') {
      if (keyword_ahead("FILTER")) {
        expect_char('(', "'(' after FILTER");
        const Position at = pos_;
        Expr e = parse_or();
        expect_char(')', "')' closing FILTER");
        for (auto& v : expr_variables(e)) filter_vars.emplace_back(v, at);
        q.filters.push_back(std::move(e));
        skip_space();
        if (peek() == '.') advance();
        need_separator = false;
      } else {
        if (need_separator) fail("expected '.' between triple patterns");
        q.patterns.push_back(parse_pattern());
        skip_space();
        need_separator = true;
        if (peek() == '.') {
          advance();
          need_separator = false;
        }
      }
      skip_space();
    }
    if (at_end()) fail("expected '}' closing WHERE");
    if (q.patterns.empty()) fail("empty WHERE: at least one triple pattern required");
    advance();

    skip_space();
    if (keyword_ahead("LIMIT")) {
      skip_space();
      const Position at = pos_;
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
      auto n = parse_integer(digits);
      if (!n || *n < 1) fail_at(at, "expected a positive integer after LIMIT");
      q.limit = *n;
      skip_space();
    }
    if (!at_end()) fail("expected end of query");

    std::set<std::string> bound;
    for (const auto& p : q.patterns) {
      for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object}) {
        if (auto v = std::get_if<Variable>(t)) bound.insert(v->name);
      }
    }
    for (const auto& [name, at] : selected) {
      if (!bound.contains(name)) {
        fail_at(at, "variable ?" + name + " in SELECT does not occur in WHERE");
      }
      bool dup = false;
      for (const auto& v : q.select_vars) dup = dup || v == name;
      if (!dup) q.select_vars.push_back(name);
    }
    for (const auto& [name, at] : filter_vars) {
      if (!bound.contains(name)) {
        fail_at(at, "variable ?" + name +
                        " in FILTER does not occur in any triple pattern");
      }
    }
    return q;
  }

 private:
  struct Position {
    std::size_t offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;
  };

  bool at_end() const { return pos_.offset >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_.offset + ahead < text_.size() ? text_[pos_.offset + ahead] : '\0';
  }
  char advance() {
    const char c = text_[pos_.offset++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
  [[noreturn]] void fail_at(const Position& at, const std::string& message) const {
    throw ParseError(message, at.line, at.column);
  }

  void skip_space() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  // Consumes `word` (case-insensitive) when it stands alone at the cursor.
  bool keyword_ahead(std::string_view word) {
    skip_space();
    if (pos_.offset + word.size() > text_.size()) return false;
    if (!iequals(text_.substr(pos_.offset, word.size()), word)) return false;
    if (is_name_char(peek(word.size())) || peek(word.size()) == ':') return false;
    for (std::size_t i = 0; i < word.size(); ++i) advance();
    return true;
  }

  void expect_keyword(std::string_view word) {
    if (!keyword_ahead(word)) fail("expected " + std::string(word));
  }

  void expect_char(char c, const std::string& what) {
    skip_space();
    if (peek() != c) fail("expected " + what);
    advance();
  }

  void parse_prefix() {
    skip_space();
    std::string name;
    while (is_name_char(peek())) name += advance();
    if (peek() != ':') fail("expected ':' after prefix name");
    advance();
    skip_space();
    if (peek() != '<') fail("expected '<iri>' in PREFIX declaration");
    prefixes_[name] = parse_iriref();
  }

  std::string parse_var_name() {
    advance();
    std::string name;
    while (is_name_char(peek())) name += advance();
    if (name.empty()) fail("expected a variable name");
    return name;
  }

  std::string parse_iriref() {
    const Position at = pos_;
    advance();
    std::string iri;
    while (!at_end() && peek() != '>') {
      const char c = peek();
      if (c == '\n' || c == ' ' || c == '<' || c == '"') {
        fail_at(at, "unterminated IRI, expected '>'");
      }
      iri += advance();
    }
    if (at_end()) fail_at(at, "unterminated IRI, expected '>'");
    advance();
    if (!is_absolute_iri(iri)) fail_at(at, "IRI <" + iri + "> is not absolute");
    return iri;
  }

  std::string parse_prefixed_name() {
    const Position at = pos_;
    std::string prefix;
    while (is_name_char(peek())) prefix += advance();
    if (peek() != ':') fail_at(at, "expected a term");
    advance();
    std::string local;
    while (is_local_char(peek())) local += advance();
    // A trailing '.' terminates the pattern rather than the name.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_.offset;
      --pos_.column;
    }
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail_at(at, "unknown prefix '" + prefix + ":'");
    return it->second + local;
  }

  std::string parse_quoted() {
    const Position at = pos_;
    const char quote = advance();
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail_at(at, "unterminated string literal");
      const char c = advance();
      if (c == quote) break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail_at(at, "unterminated string literal");
      const char e = advance();
      switch (e) {
        case 't': out += '\t'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u':
        case 'U': {
          const int n = e == 'u' ? 4 : 8;
          std::string hex;
          for (int i = 0; i < n; ++i) {
            if (!std::isxdigit(static_cast<unsigned char>(peek()))) {
              fail("expected hex digit in escape");
            }
            hex += advance();
          }
          append_utf8(out, static_cast<std::uint32_t>(std::stoul(hex, nullptr, 16)));
          break;
        }
        default:
          fail("unknown escape '\\" + std::string(1, e) + "'");
      }
    }
    return out;
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
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

  Term parse_literal() {
    const Position at = pos_;
    std::string lexical = parse_quoted();
    if (peek() != '^' || peek(1) != '^') return Term::string(std::move(lexical));
    advance();
    advance();
    std::string dt_iri;
    if (peek() == '<') {
      dt_iri = parse_iriref();
    } else {
      dt_iri = parse_prefixed_name();
    }
    auto dt = datatype_from_iri(dt_iri);
    if (!dt) fail_at(at, "unsupported datatype <" + dt_iri + ">");
    try {
      return Term::literal(std::move(lexical), *dt);
    } catch (const std::invalid_argument& e) {
      fail_at(at, e.what());
    }
  }

  Term parse_number() {
    const Position at = pos_;
    std::string text;
    if (peek() == '+' || peek() == '-') text += advance();
    bool is_double = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_double = true;
      text += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '+' || peek(1) == '-') &&
          std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      is_double = true;
      text += advance();
      if (peek() == '+' || peek() == '-') text += advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
    }
    if (is_double) {
      auto d = parse_double(text);
      if (!d) fail_at(at, "malformed number '" + text + "'");
      return Term::real(*d);
    }
    auto i = parse_integer(text);
    if (!i) fail_at(at, "malformed or out-of-range integer '" + text + "'");
    return Term::integer(*i);
  }

  bool number_ahead() const {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    if (c == '+' || c == '-') {
      const char d = peek(1);
      return std::isdigit(static_cast<unsigned char>(d)) ||
             (d == '.' && std::isdigit(static_cast<unsigned char>(peek(2))));
    }
    return c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)));
  }

  enum class Slot { Subject, Predicate, Object };

  PatternTerm parse_term(Slot slot) {
    skip_space();
    const Position at = pos_;
    const char c = peek();
    if (c == '?' || c == '$') return Variable{parse_var_name()};
    if (c == '<') return Term::iri(parse_iriref());
    if (slot == Slot::Predicate && c == 'a' && !is_local_char(peek(1))) {
      advance();
      return vocab::rdf_type();
    }
    if (c == '"' || c == '\'' || number_ahead()) {
      if (slot != Slot::Object) {
        fail_at(at, std::string("literal not allowed in ") +
                        (slot == Slot::Subject ? "subject" : "predicate") +
                        " position");
      }
      return c == '"' || c == '\'' ? parse_literal() : parse_number();
    }
    if (is_name_char(c) || c == ':') return Term::iri(parse_prefixed_name());
    if (at_end()) fail("unexpected end of query, expected a term");
    fail("expected a variable, IRI, prefixed name or literal");
  }

  QueryPattern parse_pattern() {
    QueryPattern p;
    p.subject = parse_term(Slot::Subject);
    p.predicate = parse_term(Slot::Predicate);
    p.object = parse_term(Slot::Object);
    return p;
  }

  Expr parse_or() {
    std::vector<Expr> args{parse_and()};
    while (true) {
      skip_space();
      if (peek() == '|' && peek(1) == '|') {
        advance();
        advance();
        args.push_back(parse_and());
      } else {
        break;
      }
    }
    return args.size() == 1 ? std::move(args.front())
                            : Expr::node(ExprOp::Or, std::move(args));
  }

  Expr parse_and() {
    std::vector<Expr> args{parse_unary()};
    while (true) {
      skip_space();
      if (peek() == '&' && peek(1) == '&') {
        advance();
        advance();
        args.push_back(parse_unary());
      } else {
        break;
      }
    }
    return args.size() == 1 ? std::move(args.front())
                            : Expr::node(ExprOp::And, std::move(args));
  }

  Expr parse_unary() {
    skip_space();
    if (peek() == '!' && peek(1) != '=') {
      advance();
      return Expr::node(ExprOp::Not, {parse_unary()});
    }
    if (peek() == '(') {
      advance();
      Expr inner = parse_or();
      expect_char(')', "')'");
      return inner;
    }
    Expr lhs = parse_operand();
    skip_space();
    const Position at = pos_;
    ExprOp op;
    if (peek() == '=') {
      advance();
      op = ExprOp::Eq;
    } else if (peek() == '!' && peek(1) == '=') {
      advance();
      advance();
      op = ExprOp::Ne;
    } else if (peek() == '<' && peek(1) == '=') {
      advance();
      advance();
      op = ExprOp::Le;
    } else if (peek() == '>' && peek(1) == '=') {
      advance();
      advance();
      op = ExprOp::Ge;
    } else if (peek() == '<') {
      advance();
      op = ExprOp::Lt;
    } else if (peek() == '>') {
      advance();
      op = ExprOp::Gt;
    } else {
      fail_at(at, "expected comparison operator (=, !=, <, <=, >, >=)");
    }
    Expr rhs = parse_operand();
    return Expr::node(op, {std::move(lhs), std::move(rhs)});
  }

  // An IRI in operand position must look like <scheme:...>; anything else
  // after '<' is the less-than operator of a malformed expression.
  bool iri_ahead() const {
    if (peek() != '<') return false;
    for (std::size_t i = 1; pos_.offset + i < text_.size(); ++i) {
      const char c = text_[pos_.offset + i];
      if (c == '>') return true;
      if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '"') {
        return false;
      }
    }
    return false;
  }

  Expr parse_operand() {
    skip_space();
    const char c = peek();
    if (c == '?' || c == '$') return Expr::variable(parse_var_name());
    if (c == '"' || c == '\'') return Expr::literal(parse_literal());
    if (number_ahead()) return Expr::literal(parse_number());
    if (iri_ahead()) return Expr::literal(Term::iri(parse_iriref()));
    if (is_name_char(c)) return Expr::literal(Term::iri(parse_prefixed_name()));
    if (at_end()) fail("unexpected end of query, expected an operand");
    fail("expected a variable or constant in FILTER");
  }

  std::string_view text_;
  Position pos_;
  std::map<std::string, std::string> prefixes_;
};

std::string term_text(const PatternTerm& t) {
  if (auto v = std::get_if<Variable>(&t)) return "?" + v->name;
  return std::get<Term>(t).to_ntriples();
}

std::string expr_text(const Expr& e) {
  switch (e.op) {
    case ExprOp::Var:
      return "?" + e.var;
    case ExprOp::Const:
      return e.constant.to_ntriples();
    case ExprOp::Not:
      return "!(" + expr_text(e.args.front()) + ")";
    case ExprOp::And:
    case ExprOp::Or: {
      std::string out = "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += e.op == ExprOp::And ? " && " : " || ";
        out += expr_text(e.args[i]);
      }
      return out + ")";
    }
    default: {
      static const std::map<ExprOp, std::string> ops{
          {ExprOp::Eq, "="}, {ExprOp::Ne, "!="}, {ExprOp::Lt, "<"},
          {ExprOp::Le, "<="}, {ExprOp::Gt, ">"}, {ExprOp::Ge, ">="}};
      return "(" + expr_text(e.args[0]) + " " + ops.at(e.op) + " " +
             expr_text(e.args[1]) + ")";
    }
  }
}

}  // namespace

std::vector<std::string> expr_variables(const Expr& e) {
  std::vector<std::string> out;
  collect_vars(e, out);
  return out;
}

Query parse_query(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Query& query) {
  std::string out = "SELECT ";
  if (query.distinct) out += "DISTINCT ";
  for (const auto& v : query.select_vars) out += "?" + v + " ";
  out += "WHERE {\n";
  for (const auto& p : query.patterns) {
    out += "  " + term_text(p.subject) + " " + term_text(p.predicate) + " " +
           term_text(p.object) + " .\n";
  }
  for (const auto& f : query.filters) out += "  FILTER(" + expr_text(f) + ")\n";
  out += "}";
  if (query.limit) out += " LIMIT " + std::to_string(*query.limit);
  out += "\n";
  return out;
}

}  // namespace optkb::oql
