#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "owlmat/rdf_io.hpp"
#include "owlmat/term_store.hpp"

namespace owlmat {

enum class RestrictionKind : std::uint8_t { object, data };

/// An owl:hasValue restriction. `anchor` is the node carrying the
/// owl:Restriction / owl:onProperty / owl:hasValue triples.
struct Restriction {
  TermId anchor;
  TermId property;
  TermId value;
  RestrictionKind kind = RestrictionKind::object;

  friend constexpr bool operator==(const Restriction &, const Restriction &) = default;
};

/// Unordered class pair, stored with first <= second.
struct ClassPair {
  TermId first;
  TermId second;

  static ClassPair of(TermId a, TermId b) { return a <= b ? ClassPair{a, b} : ClassPair{b, a}; }
  friend constexpr auto operator<=>(const ClassPair &, const ClassPair &) = default;
};

class TBoxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TBoxIndex;

/// Accumulates terminology triples in any order; build() validates and indexes
/// them. Triples outside the recognised vocabulary are ignored.
class TBoxBuilder {
 public:
  TBoxBuilder(const TermStore &store, const Vocabulary &vocab) : store_(store), vocab_(vocab) {}

  void add(const Triple &t);
  void add(std::span<const Triple> triples) {
    for (const auto &t : triples) add(t);
  }

  TBoxIndex build() const;

 private:
  using Edge = std::pair<TermId, TermId>;

  const TermStore &store_;
  const Vocabulary &vocab_;
  std::vector<Edge> subclass_;
  std::vector<Edge> on_property_;
  std::vector<Edge> has_value_;
  std::vector<Edge> disjoint_;
  std::vector<TermId> restriction_decls_;
  std::vector<TermId> class_decls_;
  std::vector<TermId> property_decls_;
};

/// Immutable terminology index. All per-class lookups accept any TermId and
/// return empty ranges for ids that are not named classes.
class TBoxIndex {
 public:
  TBoxIndex() = default;

  /// Named classes sorted by id; owl:Thing is included when it occurs.
  std::span<const TermId> named_classes() const { return classes_; }
  bool is_named_class(TermId id) const { return slot(id) != kNoSlot; }
  bool is_restriction_anchor(TermId id) const;

  /// Reported class count; owl:Thing is not counted.
  std::size_t class_count() const;
  std::size_t subclass_edge_count() const { return super_ids_.size(); }
  /// Number of restriction anchors (all declared owl:Restriction nodes).
  std::size_t restriction_count() const { return anchors_.size(); }
  std::span<const Restriction> restrictions() const { return anchors_; }
  std::span<const TermId> declared_properties() const { return properties_; }

  std::span<const TermId> direct_superclasses(TermId c) const { return row(super_offsets_, super_ids_, c); }
  std::span<const TermId> direct_subclasses(TermId c) const { return row(sub_offsets_, sub_ids_, c); }
  std::span<const Restriction> direct_restrictions(TermId c) const;

  /// Named classes strictly above `c`, sorted by id. Contains `c` itself only
  /// when `c` lies on a subclass cycle.
  std::span<const TermId> superclass_closure(TermId c) const;

  /// Named classes strictly below `c` (reverse reachability), sorted by id.
  std::vector<TermId> descendants(TermId c) const;

  /// Restrictions on `c` or any superclass, one per (property, value).
  std::vector<Restriction> effective_restrictions(TermId c) const;

  /// Asserted disjointness, deduplicated.
  std::span<const ClassPair> disjoint_pairs() const { return disjoint_; }
  /// Asserted disjointness closed under subclassing on both sides.
  std::vector<ClassPair> propagate_disjointness() const;

  /// Debug dump: `class,closure_size` per named class.
  void write_closure_csv(std::ostream &out, const TermStore &store) const;

 private:
  friend class TBoxBuilder;
  static constexpr std::uint32_t kNoSlot = 0xFFFFFFFFu;

  std::uint32_t slot(TermId id) const {
    return id.valid() && id.value < slot_of_.size() ? slot_of_[id.value] : kNoSlot;
  }
  std::span<const TermId> row(const std::vector<std::uint32_t> &offsets, const std::vector<TermId> &ids,
                              TermId c) const {
    std::uint32_t s = slot(c);
    if (s == kNoSlot) return {};
    return {ids.data() + offsets[s], ids.data() + offsets[s + 1]};
  }
  void compute_closures();

  TermId owl_thing_;
  std::vector<std::uint32_t> slot_of_;  // TermId -> slot in classes_
  std::vector<TermId> classes_;
  std::vector<std::uint32_t> super_offsets_, sub_offsets_, restriction_offsets_;
  std::vector<TermId> super_ids_, sub_ids_;
  std::vector<Restriction> restrictions_;  // grouped by class slot
  std::vector<Restriction> anchors_;       // sorted by anchor id
  std::vector<ClassPair> disjoint_;
  std::vector<TermId> properties_;
  // One closure per strongly connected component.
  std::vector<std::uint32_t> component_of_;
  std::vector<std::uint32_t> closure_offsets_;
  std::vector<TermId> closure_ids_;
};

}  // namespace owlmat
