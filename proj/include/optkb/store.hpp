#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "optkb/term.hpp"

namespace optkb {

using TermId = std::uint32_t;
inline constexpr TermId kAnyTerm = std::numeric_limits<TermId>::max();

// (subject, predicate, object) ids in SPO order.
using IdTriple = std::array<TermId, 3>;

// Positions set to kAnyTerm are wildcards.
using IdPattern = std::array<TermId, 3>;

struct TriplePattern {
  std::optional<Term> subject;
  std::optional<Term> predicate;
  std::optional<Term> object;
};

// Comparison category of a stored term, precomputed at intern time so that
// filters never re-parse lexical forms.
struct TermValue {
  enum class Category : std::uint8_t { Iri, String, Number, Date };
  Category category = Category::Iri;
  bool is_integer = false;
  std::int64_t integer = 0;
  double number = 0.0;
};

TermValue term_value(const Term& term);

// Bijective term <-> dense id mapping.
class Dictionary {
 public:
  TermId intern(const Term& term);
  std::optional<TermId> find(const Term& term) const;
  const Term& term(TermId id) const { return terms_[id]; }
  const TermValue& value(TermId id) const { return values_[id]; }
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::vector<Term> terms_;
  std::vector<TermValue> values_;
  std::unordered_map<Term, TermId, TermHash> ids_;
};

bool is_absolute_iri(std::string_view iri);

// In-memory triple set with SPO, POS and OSP indexes kept as sorted vectors.
// A Store is a plain value: it is not internally synchronized. Concurrent
// readers are served by sharing an immutable snapshot (see KnowledgeBase).
class Store {
 public:
  enum class IndexOrder : std::uint8_t { SPO, POS, OSP };

  // Returns false iff the triple was already present. Throws
  // std::invalid_argument for literal subjects/predicates or relative IRIs.
  bool insert(const Triple& triple);
  // Applies the whole batch or nothing; returns the number of new triples.
  std::size_t insert_batch(std::span<const Triple> triples);

  bool contains(const Triple& triple) const;
  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }
  std::size_t index_size(IndexOrder order) const noexcept;

  const Dictionary& dictionary() const noexcept { return dict_; }
  std::optional<TermId> find_id(const Term& term) const {
    return dict_.find(term);
  }
  const Term& term(TermId id) const { return dict_.term(id); }

  std::vector<Triple> match(const TriplePattern& pattern) const;
  // All triples in SPO index order.
  std::vector<Triple> triples() const;

  static IndexOrder choose_index(const IdPattern& pattern) noexcept;

  // Calls `fn(IdTriple)` (SPO layout) for each match, in ascending order of
  // the chosen index.
  template <typename Fn>
  void for_each_match(const IdPattern& pattern, Fn&& fn) const;

  // Exact number of matches.
  std::size_t count(const IdPattern& pattern) const;

 private:
  using Index = std::vector<IdTriple>;

  const Index& index(IndexOrder order) const noexcept;
  static IdTriple to_order(const IdTriple& spo, IndexOrder order) noexcept;
  static IdTriple from_order(const IdTriple& key, IndexOrder order) noexcept;
  // Number of leading positions (in index order) that are bound.
  static std::size_t bound_prefix(const IdTriple& key) noexcept;
  std::pair<Index::const_iterator, Index::const_iterator> range(
      const IdPattern& pattern, IndexOrder order) const;
  IdTriple encode(const Triple& triple);
  static void check_triple(const Triple& triple);

  Dictionary dict_;
  Index spo_;
  Index pos_;
  Index osp_;
};

template <typename Fn>
void Store::for_each_match(const IdPattern& pattern, Fn&& fn) const {
  const IndexOrder order = choose_index(pattern);
  auto [first, last] = range(pattern, order);
  for (auto it = first; it != last; ++it) {
    const IdTriple spo = from_order(*it, order);
    // The chosen prefix covers every bound position, so no extra checks.
    fn(spo);
  }
}

}  // namespace optkb
