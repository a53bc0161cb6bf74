#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "optkb/store.hpp"
#include "optkb/term.hpp"

namespace optkb::oql {

struct Variable {
  std::string name;  // without the leading '?'
  bool operator==(const Variable&) const = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct QueryPattern {
  PatternTerm subject;
  PatternTerm predicate;
  PatternTerm object;
  bool operator==(const QueryPattern&) const = default;
};

enum class ExprOp { Or, And, Not, Eq, Ne, Lt, Le, Gt, Ge, Var, Const };

struct Expr {
  ExprOp op = ExprOp::Const;
  std::string var;          // ExprOp::Var
  Term constant;            // ExprOp::Const
  std::vector<Expr> args;   // operands of logical and comparison nodes

  bool operator==(const Expr&) const = default;

  static Expr variable(std::string name);
  static Expr literal(Term value);
  static Expr node(ExprOp op, std::vector<Expr> args);
};

// Variables referenced by `e`, in first-occurrence order.
std::vector<std::string> expr_variables(const Expr& e);

struct Query {
  std::vector<std::string> select_vars;
  bool distinct = false;
  std::vector<QueryPattern> patterns;
  std::vector<Expr> filters;
  std::optional<std::int64_t> limit;
};

// Throws ParseError with line/column; the message names the expected token.
// Prefixes opt, inst, rdf, dc and xsd are predeclared.
Query parse_query(std::string_view text);

// OQL text equivalent to `query` (prefixes expanded to full IRIs).
std::string to_string(const Query& query);

struct BindingTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Term>> rows;
  // Partial solutions dropped because a filter raised a type error.
  std::size_t filter_type_errors = 0;
};

// Set semantics; rows sorted by the N-Triples form of their terms, column by
// column, before LIMIT applies.
BindingTable evaluate(const Query& query, const Store& store);

}  // namespace optkb::oql
