#include "optkb/store.hpp"

#include <cctype>
#include <stdexcept>

namespace optkb {

TermValue term_value(const Term& term) {
  TermValue v;
  if (term.is_iri()) return v;
  switch (term.datatype()) {
    case Datatype::String:
      v.category = TermValue::Category::String;
      break;
    case Datatype::Date:
      v.category = TermValue::Category::Date;
      break;
    case Datatype::Integer:
      v.category = TermValue::Category::Number;
      v.is_integer = true;
      v.integer = parse_integer(term.value()).value_or(0);
      v.number = static_cast<double>(v.integer);
      break;
    case Datatype::Double:
      v.category = TermValue::Category::Number;
      v.number = parse_double(term.value()).value_or(0.0);
      break;
  }
  return v;
}

TermId Dictionary::intern(const Term& term) {
  auto [it, inserted] = ids_.try_emplace(term, static_cast<TermId>(terms_.size()));
  if (inserted) {
    if (terms_.size() >= kAnyTerm) {
      ids_.erase(it);
      throw std::length_error("term dictionary is full");
    }
    terms_.push_back(term);
    values_.push_back(term_value(term));
  }
  return it->second;
}

std::optional<TermId> Dictionary::find(const Term& term) const {
  if (auto it = ids_.find(term); it != ids_.end()) return it->second;
  return std::nullopt;
}

bool is_absolute_iri(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  if (!std::isalpha(static_cast<unsigned char>(iri[0]))) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    const auto c = static_cast<unsigned char>(iri[i]);
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  for (char c : iri) {
    const auto uc = static_cast<unsigned char>(c);
    if (uc <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

void Store::check_triple(const Triple& t) {
  if (!t.subject.is_iri()) {
    throw std::invalid_argument("triple subject must be an IRI");
  }
  if (!t.predicate.is_iri()) {
    throw std::invalid_argument("triple predicate must be an IRI");
  }
  for (const Term* term : {&t.subject, &t.predicate, &t.object}) {
    if (term->is_iri() && !is_absolute_iri(term->value())) {
      throw std::invalid_argument("not an absolute IRI: " + term->value());
    }
  }
}

IdTriple Store::encode(const Triple& t) {
  return {dict_.intern(t.subject), dict_.intern(t.predicate),
          dict_.intern(t.object)};
}

IdTriple Store::to_order(const IdTriple& spo, IndexOrder order) noexcept {
  switch (order) {
    case IndexOrder::SPO: return spo;
    case IndexOrder::POS: return {spo[1], spo[2], spo[0]};
    case IndexOrder::OSP: return {spo[2], spo[0], spo[1]};
  }
  return spo;
}

IdTriple Store::from_order(const IdTriple& key, IndexOrder order) noexcept {
  switch (order) {
    case IndexOrder::SPO: return key;
    case IndexOrder::POS: return {key[2], key[0], key[1]};
    case IndexOrder::OSP: return {key[1], key[2], key[0]};
  }
  return key;
}

const Store::Index& Store::index(IndexOrder order) const noexcept {
  switch (order) {
    case IndexOrder::SPO: return spo_;
    case IndexOrder::POS: return pos_;
    case IndexOrder::OSP: return osp_;
  }
  return spo_;
}

std::size_t Store::index_size(IndexOrder order) const noexcept {
  return index(order).size();
}

bool Store::insert(const Triple& triple) {
  return insert_batch(std::span<const Triple>(&triple, 1)) == 1;
}

std::size_t Store::insert_batch(std::span<const Triple> triples) {
  for (const auto& t : triples) check_triple(t);

  std::vector<IdTriple> fresh;
  fresh.reserve(triples.size());
  for (const auto& t : triples) fresh.push_back(encode(t));
  std::sort(fresh.begin(), fresh.end());
  fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());
  std::erase_if(fresh, [this](const IdTriple& t) {
    return std::binary_search(spo_.begin(), spo_.end(), t);
  });
  if (fresh.empty()) return 0;

  // Build all three new indexes before publishing any of them.
  auto merged = [&](const Index& current, IndexOrder order) {
    Index add;
    add.reserve(fresh.size());
    for (const auto& t : fresh) add.push_back(to_order(t, order));
    std::sort(add.begin(), add.end());
    Index out;
    out.reserve(current.size() + add.size());
    std::merge(current.begin(), current.end(), add.begin(), add.end(),
               std::back_inserter(out));
    return out;
  };
  Index spo = merged(spo_, IndexOrder::SPO);
  Index pos = merged(pos_, IndexOrder::POS);
  Index osp = merged(osp_, IndexOrder::OSP);
  spo_.swap(spo);
  pos_.swap(pos);
  osp_.swap(osp);
  return fresh.size();
}

bool Store::contains(const Triple& triple) const {
  auto s = dict_.find(triple.subject);
  auto p = dict_.find(triple.predicate);
  auto o = dict_.find(triple.object);
  if (!s || !p || !o) return false;
  return std::binary_search(spo_.begin(), spo_.end(), IdTriple{*s, *p, *o});
}

Store::IndexOrder Store::choose_index(const IdPattern& p) noexcept {
  const bool s = p[0] != kAnyTerm;
  const bool pr = p[1] != kAnyTerm;
  const bool o = p[2] != kAnyTerm;
  if (s && (pr || !o)) return IndexOrder::SPO;  // s, sp, spo
  if (pr) return IndexOrder::POS;               // p, po
  if (o) return IndexOrder::OSP;                // o, os
  return IndexOrder::SPO;                       // full scan
}

std::size_t Store::bound_prefix(const IdTriple& key) noexcept {
  std::size_t n = 0;
  while (n < 3 && key[n] != kAnyTerm) ++n;
  return n;
}

std::pair<Store::Index::const_iterator, Store::Index::const_iterator>
Store::range(const IdPattern& pattern, IndexOrder order) const {
  const Index& idx = index(order);
  const IdTriple key = to_order(pattern, order);
  const std::size_t n = bound_prefix(key);
  if (n == 0) return {idx.begin(), idx.end()};
  auto less = [n](const IdTriple& a, const IdTriple& b) {
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };
  return std::equal_range(idx.begin(), idx.end(), key, less);
}

std::size_t Store::count(const IdPattern& pattern) const {
  auto [first, last] = range(pattern, choose_index(pattern));
  return static_cast<std::size_t>(last - first);
}

std::vector<Triple> Store::match(const TriplePattern& pattern) const {
  IdPattern ids{kAnyTerm, kAnyTerm, kAnyTerm};
  const std::optional<Term>* parts[] = {&pattern.subject, &pattern.predicate,
                                        &pattern.object};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!parts[i]->has_value()) continue;
    auto id = dict_.find(**parts[i]);
    if (!id) return {};
    ids[i] = *id;
  }
  std::vector<Triple> out;
  for_each_match(ids, [&](const IdTriple& t) {
    out.push_back({dict_.term(t[0]), dict_.term(t[1]), dict_.term(t[2])});
  });
  return out;
}

std::vector<Triple> Store::triples() const {
  return match(TriplePattern{});
}

}  // namespace optkb
