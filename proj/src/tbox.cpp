#include "owlmat/tbox.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

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

// ---------------------------------------------------------------------------
// builder

void TBoxBuilder::add(const Triple &t) {
  if (t.predicate == vocab_.rdfs_subclass_of) {
    subclass_.emplace_back(t.subject, t.object);
  } else if (t.predicate == vocab_.rdf_type) {
    if (t.object == vocab_.owl_restriction) {
      restriction_decls_.push_back(t.subject);
    } else if (t.object == vocab_.owl_class) {
      class_decls_.push_back(t.subject);
    } else if (t.object == vocab_.owl_object_property || t.object == vocab_.owl_datatype_property) {
      property_decls_.push_back(t.subject);
    }
  } else if (t.predicate == vocab_.owl_on_property) {
    on_property_.emplace_back(t.subject, t.object);
  } else if (t.predicate == vocab_.owl_has_value) {
    has_value_.emplace_back(t.subject, t.object);
  } else if (t.predicate == vocab_.owl_disjoint_with) {
    disjoint_.emplace_back(t.subject, t.object);
  }
}

TBoxIndex TBoxBuilder::build() const {
  TBoxIndex ix;
  ix.owl_thing_ = vocab_.owl_thing;

  std::vector<TermId> anchors = restriction_decls_;
  sort_unique(anchors);
  auto is_anchor = [&](TermId id) { return std::binary_search(anchors.begin(), anchors.end(), id); };
  auto is_literal = [&](TermId id) { return store_.resolve(id).is_literal(); };

  std::vector<Edge> on_property = on_property_;
  std::vector<Edge> has_value = has_value_;
  sort_unique(on_property);
  sort_unique(has_value);

  // Resolve each anchor to exactly one (property, value).
  auto single = [&](const std::vector<Edge> &rel, TermId anchor, const char *what) {
    auto lo = std::lower_bound(rel.begin(), rel.end(), Edge{anchor, TermId(0)});
    if (lo == rel.end() || lo->first != anchor)
      throw TBoxError("restriction " + describe(store_, anchor) + " has no " + what);
    auto next = std::next(lo);
    if (next != rel.end() && next->first == anchor)
      throw TBoxError("restriction " + describe(store_, anchor) + " has more than one " + what);
    return lo->second;
  };
  ix.anchors_.reserve(anchors.size());
  for (TermId a : anchors) {
    TermId property = single(on_property, a, "owl:onProperty");
    TermId value = single(has_value, a, "owl:hasValue");
    if (!store_.resolve(property).is_iri())
      throw TBoxError("restriction " + describe(store_, a) + " has a non-IRI property");
    ix.anchors_.push_back(
        {a, property, value, is_literal(value) ? RestrictionKind::data : RestrictionKind::object});
  }
  auto anchor_restriction = [&](TermId a) -> const Restriction & {
    return *std::lower_bound(ix.anchors_.begin(), ix.anchors_.end(), a,
                             [](const Restriction &r, TermId id) { return r.anchor < id; });
  };

  // Nodes that carry restriction triples without the owl:Restriction type.
  std::vector<TermId> undeclared;
  for (const auto &[s, o] : on_property)
    if (!is_anchor(s)) undeclared.push_back(s);
  for (const auto &[s, o] : has_value)
    if (!is_anchor(s)) undeclared.push_back(s);
  sort_unique(undeclared);

  std::vector<Edge> edges;
  std::vector<std::pair<TermId, Restriction>> attached;
  for (const auto &[sub, super] : subclass_) {
    if (is_literal(sub)) throw TBoxError("literal as subclass: " + describe(store_, sub));
    if (is_literal(super)) throw TBoxError("literal as superclass of " + describe(store_, sub));
    if (is_anchor(sub)) continue;
    if (is_anchor(super)) {
      attached.emplace_back(sub, anchor_restriction(super));
    } else if (store_.resolve(super).is_blank() ||
               std::binary_search(undeclared.begin(), undeclared.end(), super)) {
      throw TBoxError("restriction anchor " + describe(store_, super) +
                      " used as superclass but never declared a owl:Restriction");
    } else {
      edges.emplace_back(sub, super);
    }
  }
  sort_unique(edges);

  for (const auto &[a, b] : disjoint_) {
    if (is_literal(a) || is_literal(b)) throw TBoxError("literal in owl:disjointWith axiom");
    if (is_anchor(a) || is_anchor(b)) continue;
    ix.disjoint_.push_back(ClassPair::of(a, b));
  }
  sort_unique(ix.disjoint_);

  for (TermId c : class_decls_)
    if (!is_anchor(c) && !is_literal(c)) ix.classes_.push_back(c);
  for (const auto &[a, b] : edges) {
    ix.classes_.push_back(a);
    ix.classes_.push_back(b);
  }
  for (const auto &[c, r] : attached) ix.classes_.push_back(c);
  for (const auto &p : ix.disjoint_) {
    ix.classes_.push_back(p.first);
    ix.classes_.push_back(p.second);
  }
  sort_unique(ix.classes_);

  const std::size_t n = ix.classes_.size();
  ix.slot_of_.assign(store_.size(), TBoxIndex::kNoSlot);
  for (std::size_t i = 0; i < n; ++i) ix.slot_of_[ix.classes_[i].value] = static_cast<std::uint32_t>(i);

  auto build_rows = [&](const std::vector<Edge> &sorted, std::vector<std::uint32_t> &offsets,
                        std::vector<TermId> &ids) {
    offsets.assign(n + 1, 0);
    for (const auto &e : sorted) ++offsets[ix.slot(e.first) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    ids.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) ids[i] = sorted[i].second;
  };
  build_rows(edges, ix.super_offsets_, ix.super_ids_);
  std::vector<Edge> reversed;
  reversed.reserve(edges.size());
  for (const auto &[a, b] : edges) reversed.emplace_back(b, a);
  std::sort(reversed.begin(), reversed.end());
  build_rows(reversed, ix.sub_offsets_, ix.sub_ids_);

  std::sort(attached.begin(), attached.end(), [](const auto &x, const auto &y) {
    return std::tie(x.first, x.second.property, x.second.value, x.second.anchor) <
           std::tie(y.first, y.second.property, y.second.value, y.second.anchor);
  });
  attached.erase(std::unique(attached.begin(), attached.end()), attached.end());
  ix.restriction_offsets_.assign(n + 1, 0);
  for (const auto &[c, r] : attached) ++ix.restriction_offsets_[ix.slot(c) + 1];
  for (std::size_t i = 0; i < n; ++i) ix.restriction_offsets_[i + 1] += ix.restriction_offsets_[i];
  ix.restrictions_.reserve(attached.size());
  for (const auto &[c, r] : attached) ix.restrictions_.push_back(r);

  ix.properties_ = property_decls_;
  for (const auto &r : ix.anchors_) ix.properties_.push_back(r.property);
  sort_unique(ix.properties_);

  ix.compute_closures();
  return ix;
}

// ---------------------------------------------------------------------------
// index

void TBoxIndex::compute_closures() {
  const std::uint32_t n = static_cast<std::uint32_t>(classes_.size());
  constexpr std::uint32_t kUnvisited = 0xFFFFFFFFu;

  // Iterative Tarjan; components are numbered in completion order, so every
  // successor component has a smaller number than its predecessors.
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> frames;  // (node, next edge)
  component_of_.assign(n, 0);
  std::uint32_t counter = 0, components = 0;

  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    frames.emplace_back(root, super_offsets_[root]);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto &[v, e] = frames.back();
      if (e < super_offsets_[v + 1]) {
        std::uint32_t w = slot(super_ids_[e++]);
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, super_offsets_[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::uint32_t done = v;
      frames.pop_back();
      if (!frames.empty()) {
        std::uint32_t parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component_of_[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }

  // Members per component.
  std::vector<std::uint32_t> member_offsets(components + 1, 0), members(n);
  for (std::uint32_t v = 0; v < n; ++v) ++member_offsets[component_of_[v] + 1];
  for (std::uint32_t c = 0; c < components; ++c) member_offsets[c + 1] += member_offsets[c];
  {
    std::vector<std::uint32_t> fill(member_offsets.begin(), member_offsets.end() - 1);
    for (std::uint32_t v = 0; v < n; ++v) members[fill[component_of_[v]]++] = v;
  }

  closure_offsets_.assign(components + 1, 0);
  closure_ids_.clear();
  std::vector<TermId> scratch;
  for (std::uint32_t c = 0; c < components; ++c) {
    scratch.clear();
    bool cyclic = member_offsets[c + 1] - member_offsets[c] > 1;
    for (std::uint32_t m = member_offsets[c]; m < member_offsets[c + 1]; ++m) {
      std::uint32_t v = members[m];
      for (std::uint32_t e = super_offsets_[v]; e < super_offsets_[v + 1]; ++e) {
        std::uint32_t w = slot(super_ids_[e]);
        std::uint32_t cw = component_of_[w];
        if (cw == c) {
          cyclic = true;
          continue;
        }
        scratch.push_back(classes_[w]);
        scratch.insert(scratch.end(), closure_ids_.begin() + closure_offsets_[cw],
                       closure_ids_.begin() + closure_offsets_[cw + 1]);
      }
    }
    if (cyclic)
      for (std::uint32_t m = member_offsets[c]; m < member_offsets[c + 1]; ++m)
        scratch.push_back(classes_[members[m]]);
    sort_unique(scratch);
    closure_ids_.insert(closure_ids_.end(), scratch.begin(), scratch.end());
    closure_offsets_[c + 1] = static_cast<std::uint32_t>(closure_ids_.size());
  }
}

bool TBoxIndex::is_restriction_anchor(TermId id) const {
  auto it = std::lower_bound(anchors_.begin(), anchors_.end(), id,
                             [](const Restriction &r, TermId x) { return r.anchor < x; });
  return it != anchors_.end() && it->anchor == id;
}

std::size_t TBoxIndex::class_count() const {
  return classes_.size() - (is_named_class(owl_thing_) ? 1 : 0);
}

std::span<const Restriction> TBoxIndex::direct_restrictions(TermId c) const {
  std::uint32_t s = slot(c);
  if (s == kNoSlot) return {};
  return {restrictions_.data() + restriction_offsets_[s], restrictions_.data() + restriction_offsets_[s + 1]};
}

std::span<const TermId> TBoxIndex::superclass_closure(TermId c) const {
  std::uint32_t s = slot(c);
  if (s == kNoSlot) return {};
  std::uint32_t comp = component_of_[s];
  return {closure_ids_.data() + closure_offsets_[comp], closure_ids_.data() + closure_offsets_[comp + 1]};
}

std::vector<TermId> TBoxIndex::descendants(TermId c) const {
  std::vector<TermId> out;
  std::uint32_t s = slot(c);
  if (s == kNoSlot) return out;
  std::vector<bool> seen(classes_.size(), false);
  std::vector<std::uint32_t> queue{s};
  while (!queue.empty()) {
    std::uint32_t v = queue.back();
    queue.pop_back();
    for (std::uint32_t e = sub_offsets_[v]; e < sub_offsets_[v + 1]; ++e) {
      std::uint32_t w = slot(sub_ids_[e]);
      if (seen[w]) continue;
      seen[w] = true;
      out.push_back(classes_[w]);
      queue.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Restriction> TBoxIndex::effective_restrictions(TermId c) const {
  std::vector<Restriction> out;
  auto take = [&](TermId t) {
    auto rs = direct_restrictions(t);
    out.insert(out.end(), rs.begin(), rs.end());
  };
  take(c);
  for (TermId t : superclass_closure(c)) take(t);
  std::sort(out.begin(), out.end(), [](const Restriction &a, const Restriction &b) {
    return std::tie(a.property, a.value, a.anchor) < std::tie(b.property, b.value, b.anchor);
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Restriction &a, const Restriction &b) {
                          return a.property == b.property && a.value == b.value;
                        }),
            out.end());
  return out;
}

std::vector<ClassPair> TBoxIndex::propagate_disjointness() const {
  std::vector<ClassPair> out;
  for (const ClassPair &p : disjoint_) {
    std::vector<TermId> left = descendants(p.first), right = descendants(p.second);
    left.push_back(p.first);
    right.push_back(p.second);
    for (TermId a : left)
      for (TermId b : right) out.push_back(ClassPair::of(a, b));
  }
  sort_unique(out);
  return out;
}

void TBoxIndex::write_closure_csv(std::ostream &out, const TermStore &store) const {
  out << "class,closure_size\n";
  for (TermId c : classes_) out << store.resolve(c).value << ',' << superclass_closure(c).size() << '\n';
}

}  // namespace owlmat
