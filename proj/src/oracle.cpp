#include "owlmat/oracle.hpp"

#include <string>
#include <vector>

namespace owlmat {

OracleGuardError::OracleGuardError(std::size_t size, std::size_t limit)
    : std::runtime_error("oracle refuses input of " + std::to_string(size) + " triples (limit " +
                         std::to_string(limit) + ")"),
      size_(size) {}

namespace {

// Triples with the given subject, via the set's (s, p, o) order.
auto about(const TripleSet &all, TermId s) {
  struct Range {
    TripleSet::const_iterator b, e;
    auto begin() const { return b; }
    auto end() const { return e; }
  };
  auto b = all.lower_bound(Triple{s, TermId(0), TermId(0)});
  auto e = b;
  while (e != all.end() && e->subject == s) ++e;
  return Range{b, e};
}

}  // namespace

TripleSet apply_rules_once(const TripleSet &all, const Vocabulary &v) {
  auto is_restriction = [&](TermId c) { return all.contains(Triple{c, v.rdf_type, v.owl_restriction}); };

  TripleSet fresh;
  auto add = [&](const Triple &t) {
    if (!all.contains(t)) fresh.insert(t);
  };
  for (const Triple &t : all) {
    if (t.predicate == v.rdf_type) {
      for (const Triple &sc : about(all, t.object)) {
        if (sc.predicate != v.rdfs_subclass_of) continue;
        if (!is_restriction(sc.object)) {
          add({t.subject, v.rdf_type, sc.object});
          continue;
        }
        for (const Triple &p : about(all, sc.object)) {
          if (p.predicate != v.owl_on_property) continue;
          for (const Triple &h : about(all, sc.object))
            if (h.predicate == v.owl_has_value) add({t.subject, p.object, h.object});
        }
      }
    } else if (t.predicate == v.rdfs_subclass_of && !is_restriction(t.object)) {
      if (is_restriction(t.subject)) continue;
      for (const Triple &next : about(all, t.object))
        if (next.predicate == v.rdfs_subclass_of && !is_restriction(next.object))
          add({t.subject, v.rdfs_subclass_of, next.object});
    }
  }
  return fresh;
}

TripleSet naive_fixpoint(const TripleSet &input, const Vocabulary &vocab, std::size_t limit) {
  if (input.size() > limit) throw OracleGuardError(input.size(), limit);
  TripleSet all = input;
  for (;;) {
    TripleSet fresh = apply_rules_once(all, vocab);
    if (fresh.empty()) break;
    all.merge(fresh);
  }
  TripleSet derived;
  for (const Triple &t : all)
    if (!input.contains(t)) derived.insert(t);
  return derived;
}

OracleSplit split_oracle_output(const TripleSet &derived, const TermStore &store, const Vocabulary &vocab) {
  OracleSplit out;
  for (const Triple &t : derived) {
    if (t.predicate == vocab.rdfs_subclass_of) {
      out.subclass.emplace(t.subject, t.object);
    } else if (t.predicate == vocab.rdf_type) {
      if (t.object == vocab.owl_named_individual) continue;
      out.types.insert({t.subject, t.object});
    } else if (store.resolve(t.object).is_literal()) {
      out.data_assertions.insert({t.subject, t.predicate, t.object});
    } else {
      out.object_assertions.insert({t.subject, t.predicate, t.object});
    }
  }
  return out;
}

}  // namespace owlmat
