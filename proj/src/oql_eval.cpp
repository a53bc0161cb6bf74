#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "optkb/errors.hpp"
#include "optkb/oql.hpp"

namespace optkb::oql {

namespace {

struct Slot {
  bool is_var = false;
  TermId id = kAnyTerm;
  std::size_t var = 0;
};

struct CompiledPattern {
  std::array<Slot, 3> slots;
  std::size_t estimate = 0;
};

struct CompiledExpr {
  ExprOp op = ExprOp::Const;
  std::size_t var = 0;
  Term constant;
  TermValue value;
  std::vector<CompiledExpr> args;
};

struct CompiledFilter {
  CompiledExpr expr;
  std::vector<std::size_t> vars;
  bool applied = false;
};

enum class Truth { False, True, Error };

Truth compare(ExprOp op, const TermValue& a, const Term& ta, const TermValue& b,
              const Term& tb) {
  using Cat = TermValue::Category;
  if (a.category != b.category) return Truth::Error;
  int cmp = 0;
  switch (a.category) {
    case Cat::Iri:
      if (op != ExprOp::Eq && op != ExprOp::Ne) return Truth::Error;
      cmp = ta.value() == tb.value() ? 0 : 1;
      break;
    case Cat::String:
    case Cat::Date: {
      const int c = ta.value().compare(tb.value());
      cmp = c < 0 ? -1 : (c > 0 ? 1 : 0);
      break;
    }
    case Cat::Number:
      if (a.is_integer && b.is_integer) {
        cmp = a.integer < b.integer ? -1 : (a.integer > b.integer ? 1 : 0);
      } else {
        const double x = a.number;
        const double y = b.number;
        if (x < y) {
          cmp = -1;
        } else if (x > y) {
          cmp = 1;
        } else if (x == y) {
          cmp = 0;
        } else {
          // NaN is unordered: only != holds.
          return op == ExprOp::Ne ? Truth::True : Truth::False;
        }
      }
      break;
  }
  bool result = false;
  switch (op) {
    case ExprOp::Eq: result = cmp == 0; break;
    case ExprOp::Ne: result = cmp != 0; break;
    case ExprOp::Lt: result = cmp < 0; break;
    case ExprOp::Le: result = cmp <= 0; break;
    case ExprOp::Gt: result = cmp > 0; break;
    case ExprOp::Ge: result = cmp >= 0; break;
    default: return Truth::Error;
  }
  return result ? Truth::True : Truth::False;
}

Truth eval(const CompiledExpr& e, const TermId* row, const Dictionary& dict) {
  switch (e.op) {
    case ExprOp::Or: {
      bool error = false;
      for (const auto& a : e.args) {
        const Truth t = eval(a, row, dict);
        if (t == Truth::True) return Truth::True;
        error = error || t == Truth::Error;
      }
      return error ? Truth::Error : Truth::False;
    }
    case ExprOp::And: {
      bool error = false;
      for (const auto& a : e.args) {
        const Truth t = eval(a, row, dict);
        if (t == Truth::False) return Truth::False;
        error = error || t == Truth::Error;
      }
      return error ? Truth::Error : Truth::True;
    }
    case ExprOp::Not: {
      const Truth t = eval(e.args.front(), row, dict);
      if (t == Truth::Error) return t;
      return t == Truth::True ? Truth::False : Truth::True;
    }
    case ExprOp::Var:
    case ExprOp::Const:
      return Truth::Error;
    default: {
      const TermValue* v[2];
      const Term* t[2];
      for (std::size_t i = 0; i < 2; ++i) {
        const CompiledExpr& side = e.args[i];
        if (side.op == ExprOp::Var) {
          const TermId id = row[side.var];
          v[i] = &dict.value(id);
          t[i] = &dict.term(id);
        } else if (side.op == ExprOp::Const) {
          v[i] = &side.value;
          t[i] = &side.constant;
        } else {
          return Truth::Error;
        }
      }
      return compare(e.op, *v[0], *t[0], *v[1], *t[1]);
    }
  }
}

struct KeyHash {
  std::size_t operator()(const std::array<TermId, 3>& k) const noexcept {
    std::size_t h = 0;
    for (TermId id : k) h = h * 0x9E3779B97F4A7C15ULL + id;
    return h ^ (h >> 29);
  }
};

class Evaluator {
 public:
  Evaluator(const Query& query, const Store& store)
      : query_(query), store_(store), dict_(store.dictionary()) {}

  BindingTable run() {
    BindingTable table;
    table.columns = query_.select_vars;
    if (!compile()) return table;

    const auto order = plan();
    rows_.assign(width_, kAnyTerm);
    std::vector<bool> bound(width_, false);
    for (std::size_t step = 0; step < order.size(); ++step) {
      const auto& p = patterns_[order[step]];
      const std::size_t n = rows_.size() / width_;
      if (n <= p.estimate || n <= 64) {
        nested_loop(p);
      } else {
        hash_join(p, bound);
      }
      for (const auto& s : p.slots) {
        if (s.is_var) bound[s.var] = true;
      }
      apply_filters(bound, table.filter_type_errors);
      if (rows_.empty()) break;
    }
    project(table);
    return table;
  }

 private:
  std::size_t var_index(const std::string& name) {
    auto [it, inserted] = vars_.try_emplace(name, vars_.size());
    return it->second;
  }

  CompiledExpr compile_expr(const Expr& e) {
    CompiledExpr c;
    c.op = e.op;
    if (e.op == ExprOp::Var) c.var = var_index(e.var);
    if (e.op == ExprOp::Const) {
      c.constant = e.constant;
      c.value = term_value(e.constant);
    }
    for (const auto& a : e.args) c.args.push_back(compile_expr(a));
    return c;
  }

  // False when some constant is absent from the store, so nothing can match.
  bool compile() {
    bool satisfiable = true;
    for (const auto& p : query_.patterns) {
      CompiledPattern cp;
      const PatternTerm* terms[3] = {&p.subject, &p.predicate, &p.object};
      for (std::size_t i = 0; i < 3; ++i) {
        if (auto v = std::get_if<Variable>(terms[i])) {
          cp.slots[i].is_var = true;
          cp.slots[i].var = var_index(v->name);
        } else if (auto id = dict_.find(std::get<Term>(*terms[i]))) {
          cp.slots[i].id = *id;
        } else {
          satisfiable = false;
        }
      }
      patterns_.push_back(cp);
    }
    for (const auto& f : query_.filters) {
      CompiledFilter cf;
      cf.expr = compile_expr(f);
      for (const auto& name : expr_variables(f)) cf.vars.push_back(var_index(name));
      filters_.push_back(std::move(cf));
    }
    for (const auto& v : query_.select_vars) select_.push_back(var_index(v));
    width_ = std::max<std::size_t>(vars_.size(), 1);
    if (!satisfiable) return false;
    for (auto& p : patterns_) {
      p.estimate = store_.count(constant_pattern(p));
      if (p.estimate == 0) return false;
    }
    return true;
  }

  static IdPattern constant_pattern(const CompiledPattern& p) {
    IdPattern out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = p.slots[i].is_var ? kAnyTerm : p.slots[i].id;
    return out;
  }

  // Greedy order: smallest estimate first, then patterns connected to the
  // variables bound so far.
  std::vector<std::size_t> plan() const {
    std::vector<std::size_t> order;
    std::vector<bool> used(patterns_.size(), false);
    std::vector<bool> bound(width_, false);
    for (std::size_t k = 0; k < patterns_.size(); ++k) {
      std::size_t best = patterns_.size();
      bool best_connected = false;
      for (std::size_t i = 0; i < patterns_.size(); ++i) {
        if (used[i]) continue;
        bool connected = false;
        bool has_var = false;
        for (const auto& s : patterns_[i].slots) {
          if (!s.is_var) continue;
          has_var = true;
          connected = connected || bound[s.var];
        }
        connected = connected || !has_var;
        const bool better =
            best == patterns_.size() || (connected && !best_connected) ||
            (connected == best_connected &&
             patterns_[i].estimate < patterns_[best].estimate);
        if (better) {
          best = i;
          best_connected = connected;
        }
      }
      used[best] = true;
      order.push_back(best);
      for (const auto& s : patterns_[best].slots) {
        if (s.is_var) bound[s.var] = true;
      }
    }
    return order;
  }

  // Writes the pattern's variables from `spo` into `row`; false on a clash
  // with an existing binding (repeated variables).
  static bool bind(const CompiledPattern& p, const IdTriple& spo, TermId* row) {
    for (std::size_t i = 0; i < 3; ++i) {
      const Slot& s = p.slots[i];
      if (!s.is_var) continue;
      if (row[s.var] == kAnyTerm) {
        row[s.var] = spo[i];
      } else if (row[s.var] != spo[i]) {
        return false;
      }
    }
    return true;
  }

  void nested_loop(const CompiledPattern& p) {
    std::vector<TermId> out;
    std::vector<TermId> scratch(width_);
    const std::size_t n = rows_.size() / width_;
    for (std::size_t r = 0; r < n; ++r) {
      const TermId* row = &rows_[r * width_];
      IdPattern ip = constant_pattern(p);
      for (std::size_t i = 0; i < 3; ++i) {
        if (p.slots[i].is_var) ip[i] = row[p.slots[i].var];
      }
      store_.for_each_match(ip, [&](const IdTriple& spo) {
        std::copy(row, row + width_, scratch.begin());
        if (bind(p, spo, scratch.data())) {
          out.insert(out.end(), scratch.begin(), scratch.end());
        }
      });
    }
    rows_ = std::move(out);
  }

  void hash_join(const CompiledPattern& p, const std::vector<bool>& bound) {
    std::vector<std::size_t> shared;
    for (const auto& s : p.slots) {
      if (s.is_var && bound[s.var] &&
          std::find(shared.begin(), shared.end(), s.var) == shared.end()) {
        shared.push_back(s.var);
      }
    }
    // Pattern-local bindings: a fresh row holding only this pattern's vars.
    std::vector<TermId> matches;
    std::vector<TermId> scratch(width_);
    std::unordered_multimap<std::array<TermId, 3>, std::size_t, KeyHash> table;
    store_.for_each_match(constant_pattern(p), [&](const IdTriple& spo) {
      std::fill(scratch.begin(), scratch.end(), kAnyTerm);
      if (!bind(p, spo, scratch.data())) return;
      std::array<TermId, 3> key{kAnyTerm, kAnyTerm, kAnyTerm};
      for (std::size_t k = 0; k < shared.size(); ++k) key[k] = scratch[shared[k]];
      table.emplace(key, matches.size() / width_);
      matches.insert(matches.end(), scratch.begin(), scratch.end());
    });

    std::vector<TermId> out;
    const std::size_t n = rows_.size() / width_;
    for (std::size_t r = 0; r < n; ++r) {
      const TermId* row = &rows_[r * width_];
      std::array<TermId, 3> key{kAnyTerm, kAnyTerm, kAnyTerm};
      for (std::size_t k = 0; k < shared.size(); ++k) key[k] = row[shared[k]];
      auto [first, last] = table.equal_range(key);
      for (auto it = first; it != last; ++it) {
        const TermId* m = &matches[it->second * width_];
        for (std::size_t c = 0; c < width_; ++c) {
          out.push_back(m[c] != kAnyTerm ? m[c] : row[c]);
        }
      }
    }
    rows_ = std::move(out);
  }

  void apply_filters(const std::vector<bool>& bound, std::size_t& errors) {
    for (auto& f : filters_) {
      if (f.applied) continue;
      const bool ready = std::all_of(f.vars.begin(), f.vars.end(),
                                     [&](std::size_t v) { return bound[v]; });
      if (!ready) continue;
      f.applied = true;
      std::vector<TermId> kept;
      const std::size_t n = rows_.size() / width_;
      for (std::size_t r = 0; r < n; ++r) {
        const TermId* row = &rows_[r * width_];
        const Truth t = eval(f.expr, row, dict_);
        if (t == Truth::True) {
          kept.insert(kept.end(), row, row + width_);
        } else if (t == Truth::Error) {
          ++errors;
        }
      }
      rows_ = std::move(kept);
    }
  }

  void project(BindingTable& table) {
    const std::size_t n = rows_.size() / width_;
    const std::size_t k = select_.size();
    std::vector<std::vector<TermId>> projected;
    projected.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<TermId> row(k);
      for (std::size_t c = 0; c < k; ++c) row[c] = rows_[r * width_ + select_[c]];
      projected.push_back(std::move(row));
    }
    std::sort(projected.begin(), projected.end());
    projected.erase(std::unique(projected.begin(), projected.end()),
                    projected.end());

    std::unordered_map<TermId, std::string> text;
    for (const auto& row : projected) {
      for (TermId id : row) {
        if (!text.contains(id)) text.emplace(id, dict_.term(id).to_ntriples());
      }
    }
    std::sort(projected.begin(), projected.end(),
              [&](const std::vector<TermId>& a, const std::vector<TermId>& b) {
                for (std::size_t c = 0; c < a.size(); ++c) {
                  if (a[c] == b[c]) continue;
                  return text.at(a[c]) < text.at(b[c]);
                }
                return false;
              });
    std::size_t keep = projected.size();
    if (query_.limit) keep = std::min<std::size_t>(keep, static_cast<std::size_t>(*query_.limit));
    table.rows.reserve(keep);
    for (std::size_t r = 0; r < keep; ++r) {
      std::vector<Term> row;
      row.reserve(k);
      for (TermId id : projected[r]) row.push_back(dict_.term(id));
      table.rows.push_back(std::move(row));
    }
  }

  const Query& query_;
  const Store& store_;
  const Dictionary& dict_;
  std::map<std::string, std::size_t> vars_;
  std::vector<CompiledPattern> patterns_;
  std::vector<CompiledFilter> filters_;
  std::vector<std::size_t> select_;
  std::size_t width_ = 1;
  std::vector<TermId> rows_;
};

}  // namespace

BindingTable evaluate(const Query& query, const Store& store) {
  if (query.patterns.empty()) throw PreconditionViolation("empty WHERE");
  if (query.select_vars.empty()) throw PreconditionViolation("empty SELECT");
  if (query.limit && *query.limit < 1) {
    throw PreconditionViolation("LIMIT must be positive");
  }
  std::vector<std::string> bound;
  for (const auto& p : query.patterns) {
    for (const PatternTerm* t : {&p.subject, &p.predicate, &p.object}) {
      if (auto v = std::get_if<Variable>(t)) bound.push_back(v->name);
    }
  }
  auto check = [&](const std::string& name) {
    if (std::find(bound.begin(), bound.end(), name) == bound.end()) {
      throw PreconditionViolation("variable ?" + name +
                                  " does not occur in any triple pattern");
    }
  };
  for (const auto& v : query.select_vars) check(v);
  for (const auto& f : query.filters) {
    for (const auto& v : expr_variables(f)) check(v);
  }
  return Evaluator(query, store).run();
}

}  // namespace optkb::oql
