#include "owlmat/sampler.hpp"

#include <algorithm>
#include <sstream>

#include "owlmat/log.hpp"

namespace owlmat {

namespace {

template <typename T>
void sort_unique(std::vector<T> &v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::string describe(const TermStore &store, TermId id) {
  std::ostringstream os;
  write_term(os, store.resolve(id));
  return os.str();
}

}  // namespace

std::vector<TermId> find_leaves(const TBoxIndex &tbox, const TermStore &store, const Vocabulary &vocab,
                                TermId root, std::size_t limit) {
  if (limit == 0) throw SamplerError("leaf limit must be at least 1");
  std::vector<TermId> candidates;
  if (root == vocab.owl_thing) {
    for (TermId c : tbox.named_classes())
      if (c != vocab.owl_thing) candidates.push_back(c);
  } else {
    if (!tbox.is_named_class(root)) throw SamplerError("unknown root class " + describe(store, root));
    candidates = tbox.descendants(root);
  }
  std::vector<TermId> leaves;
  for (TermId c : candidates)
    if (tbox.direct_subclasses(c).empty()) leaves.push_back(c);
  std::sort(leaves.begin(), leaves.end(),
            [&](TermId a, TermId b) { return store.resolve(a).value < store.resolve(b).value; });
  if (leaves.empty()) {
    warn("root " + describe(store, root) + " has no leaf descendants");
  } else if (leaves.size() < limit) {
    warn("only " + std::to_string(leaves.size()) + " leaves below " + describe(store, root) + ", " +
         std::to_string(limit) + " requested");
  }
  if (leaves.size() > limit) leaves.resize(limit);
  return leaves;
}

SubsetPlan plan_subset(const TBoxIndex &tbox, std::span<const TermId> leaves) {
  SubsetPlan plan;
  plan.leaves.assign(leaves.begin(), leaves.end());
  sort_unique(plan.leaves);
  for (TermId leaf : plan.leaves) {
    plan.class_nodes.push_back(leaf);
    auto up = tbox.superclass_closure(leaf);
    plan.class_nodes.insert(plan.class_nodes.end(), up.begin(), up.end());
    auto restrict = [&](TermId c) {
      for (const Restriction &r : tbox.direct_restrictions(c)) {
        plan.class_nodes.push_back(r.anchor);
        plan.properties.push_back(r.property);
        plan.values.push_back(r.value);
      }
    };
    restrict(leaf);
    for (TermId c : up) restrict(c);
  }
  sort_unique(plan.class_nodes);
  sort_unique(plan.properties);
  sort_unique(plan.values);
  return plan;
}

SubsetExtractor::SubsetExtractor(const SubsetPlan &plan, const SampleSpec &spec, const TermStore &store,
                                 const Vocabulary &vocab)
    : store_(store), vocab_(vocab), drop_disjointness_(spec.drop_disjointness), roles_(store.size(), 0) {
  auto mark = [&](const std::vector<TermId> &ids, Role r) {
    for (TermId id : ids) {
      if (id.value >= roles_.size()) roles_.resize(id.value + 1, 0);
      roles_[id.value] |= r;
    }
  };
  mark(plan.leaves, kLeaf);
  mark(plan.class_nodes, kClassNode);
  mark(plan.properties, kProperty);
  mark(plan.values, kValue);
}

void SubsetExtractor::add(const Triple &t) {
  const std::uint8_t subject = role(t.subject);
  bool keep = false;
  if (subject & kClassNode) keep = !(drop_disjointness_ && t.predicate == vocab_.owl_disjoint_with);
  if (subject & kProperty) keep = true;
  if ((subject & kValue) && !keep) {
    // Class memberships of restriction values would pull in classes outside
    // the sample; only the individual declaration is kept.
    if (t.predicate != vocab_.rdf_type) {
      keep = true;
    } else {
      const Term &cls = store_.resolve(t.object);
      keep = cls.is_iri() && iri::is_builtin(cls.value) && t.object != vocab_.owl_thing;
    }
  }
  if (keep) out_.push_back(t);
  if (t.predicate == vocab_.rdf_type && (role(t.object) & kLeaf)) {
    out_.push_back(t);
    out_.push_back(Triple{t.subject, vocab_.rdf_type, vocab_.owl_named_individual});
  }
}

std::vector<Triple> SubsetExtractor::finish() {
  sort_unique(out_);
  return std::move(out_);
}

std::vector<Triple> extract_subset(std::span<const Triple> dump, const TBoxIndex &tbox,
                                   std::span<const TermId> leaves, const SampleSpec &spec, const TermStore &store,
                                   const Vocabulary &vocab) {
  if (leaves.empty()) return {};
  SubsetPlan plan = plan_subset(tbox, leaves);
  SubsetExtractor extractor(plan, spec, store, vocab);
  for (const Triple &t : dump) extractor.add(t);
  return extractor.finish();
}

std::vector<std::string> validate_closedness(std::span<const Triple> subset, const TermStore &store,
                                             const Vocabulary &vocab) {
  std::vector<TermId> described;
  for (const Triple &t : subset) described.push_back(t.subject);
  sort_unique(described);
  auto is_described = [&](TermId id) {
    const Term &term = store.resolve(id);
    if (term.is_iri() && iri::is_builtin(term.value)) return true;
    return std::binary_search(described.begin(), described.end(), id);
  };

  std::vector<std::string> issues;
  auto need = [&](TermId id, const char *what, const Triple &t) {
    if (is_described(id)) return;
    issues.push_back(std::string(what) + " " + describe(store, id) + " is not described (referenced by " +
                     describe(store, t.subject) + " " + describe(store, t.predicate) + " " +
                     describe(store, t.object) + ")");
  };

  std::vector<TermId> anchors, with_property, with_value;
  for (const Triple &t : subset) {
    if (t.predicate == vocab.rdfs_subclass_of) {
      need(t.subject, "class", t);
      need(t.object, "class", t);
    } else if (t.predicate == vocab.rdf_type) {
      if (t.object == vocab.owl_restriction) anchors.push_back(t.subject);
      need(t.object, "class", t);
    } else if (t.predicate == vocab.owl_on_property) {
      with_property.push_back(t.subject);
      need(t.object, "restriction property", t);
    } else if (t.predicate == vocab.owl_has_value) {
      with_value.push_back(t.subject);
    }
  }
  sort_unique(with_property);
  sort_unique(with_value);
  for (TermId a : anchors) {
    if (!std::binary_search(with_property.begin(), with_property.end(), a))
      issues.push_back("restriction " + describe(store, a) + " lacks owl:onProperty");
    if (!std::binary_search(with_value.begin(), with_value.end(), a))
      issues.push_back("restriction " + describe(store, a) + " lacks owl:hasValue");
  }
  return issues;
}

}  // namespace owlmat
