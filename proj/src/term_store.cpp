#include "owlmat/term_store.hpp"

#include <algorithm>

namespace owlmat {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  });
}

void validate(const Term &t) {
  switch (t.kind) {
    case TermKind::iri:
      if (t.value.empty()) throw TermError("malformed term: empty IRI");
      if (has_whitespace(t.value)) throw TermError("malformed term: IRI contains whitespace: " + t.value);
      if (!t.datatype.empty() || !t.lang.empty()) throw TermError("malformed term: IRI with literal fields");
      break;
    case TermKind::blank:
      if (t.value.empty()) throw TermError("malformed term: empty blank-node label");
      if (!t.datatype.empty() || !t.lang.empty()) throw TermError("malformed term: blank node with literal fields");
      break;
    case TermKind::literal:
      if (t.datatype.empty()) throw TermError("malformed term: literal without datatype");
      if (has_whitespace(t.datatype)) throw TermError("malformed term: datatype IRI contains whitespace");
      break;
  }
}

}  // namespace

std::size_t TermStore::KeyHash::operator()(const Key &k) const noexcept {
  std::hash<std::string_view> h;
  std::size_t seed = h(k.value) ^ (static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL);
  if (k.kind == TermKind::literal) {
    seed ^= h(k.datatype) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    seed ^= h(k.lang) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

TermStore::TermStore() { index_.reserve(1024); }

TermId TermStore::lookup(const Key &key) const {
  auto it = index_.find(key);
  return it == index_.end() ? kNoTerm : it->second;
}

TermId TermStore::insert(Term term) {
  if (frozen_) throw TermError("term store is frozen");
  if (terms_.size() >= std::numeric_limits<std::uint32_t>::max() - 1) throw TermError("term store full");
  TermId id(static_cast<std::uint32_t>(terms_.size()));
  const Term &stored = terms_.emplace_back(std::move(term));
  index_.emplace(Key{stored.kind, stored.value, stored.datatype, stored.lang}, id);
  return id;
}

TermId TermStore::intern(const Term &term) {
  validate(term);
  if (TermId id = lookup({term.kind, term.value, term.datatype, term.lang}); id.valid()) return id;
  return insert(term);
}

TermId TermStore::intern_iri(std::string_view v) {
  if (TermId id = lookup({TermKind::iri, v, {}, {}}); id.valid()) return id;
  Term t = Term::iri(std::string(v));
  validate(t);
  return insert(std::move(t));
}

TermId TermStore::intern_blank(std::string_view label) {
  if (TermId id = lookup({TermKind::blank, label, {}, {}}); id.valid()) return id;
  Term t = Term::blank(std::string(label));
  validate(t);
  return insert(std::move(t));
}

TermId TermStore::intern_literal(std::string_view lexical, std::string_view datatype, std::string_view lang) {
  if (TermId id = lookup({TermKind::literal, lexical, datatype, lang}); id.valid()) return id;
  Term t = Term::literal(std::string(lexical), std::string(datatype), std::string(lang));
  validate(t);
  return insert(std::move(t));
}

TermId TermStore::find(const Term &term) const {
  return lookup({term.kind, term.value, term.datatype, term.lang});
}

TermId TermStore::find_iri(std::string_view v) const { return lookup({TermKind::iri, v, {}, {}}); }

const Term &TermStore::resolve(TermId id) const {
  if (!id.valid() || id.value >= terms_.size())
    throw std::out_of_range("unknown term id " + std::to_string(id.value));
  return terms_[id.value];
}

Vocabulary::Vocabulary(TermStore &store)
    : rdf_type(store.intern_iri(iri::rdf_type)),
      rdfs_subclass_of(store.intern_iri(iri::rdfs_subclass_of)),
      owl_class(store.intern_iri(iri::owl_class)),
      owl_thing(store.intern_iri(iri::owl_thing)),
      owl_restriction(store.intern_iri(iri::owl_restriction)),
      owl_on_property(store.intern_iri(iri::owl_on_property)),
      owl_has_value(store.intern_iri(iri::owl_has_value)),
      owl_disjoint_with(store.intern_iri(iri::owl_disjoint_with)),
      owl_named_individual(store.intern_iri(iri::owl_named_individual)),
      owl_object_property(store.intern_iri(iri::owl_object_property)),
      owl_datatype_property(store.intern_iri(iri::owl_datatype_property)) {}

bool iri::is_builtin(std::string_view v) {
  return v.starts_with(rdf) || v.starts_with(rdfs) || v.starts_with(owl);
}

}  // namespace owlmat
