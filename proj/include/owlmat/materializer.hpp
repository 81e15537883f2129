#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "owlmat/rdf_io.hpp"
#include "owlmat/tbox.hpp"
#include "owlmat/term_store.hpp"

namespace owlmat {

class ABoxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance roster plus direct named types per instance.
struct ABox {
  std::vector<TermId> instances;             // sorted by id
  std::vector<std::uint32_t> type_offsets{0};  // instances.size() + 1 entries
  std::vector<TermId> direct_types;          // sorted within each instance
  /// Asserted (s, p, o) triples whose predicate is a restriction property.
  std::vector<Triple> asserted_properties;   // sorted

  std::size_t size() const { return instances.size(); }
  std::span<const TermId> types_of(std::size_t i) const {
    return {direct_types.data() + type_offsets[i], direct_types.data() + type_offsets[i + 1]};
  }
  std::optional<std::size_t> position(TermId instance) const;
  std::size_t direct_type_count() const { return direct_types.size(); }
};

/// Classifies rdf:type triples against a built index. owl:NamedIndividual only
/// adds to the roster; other rdf/rdfs/owl vocabulary objects are terminology
/// declarations and are skipped. Typing by a class the index does not know is
/// accepted with a warning.
ABox load_abox(std::span<const Triple> triples, const TBoxIndex &tbox, const TermStore &store,
               const Vocabulary &vocab);

struct TypeAssertion {
  TermId instance;
  TermId cls;
  friend constexpr auto operator<=>(const TypeAssertion &, const TypeAssertion &) = default;
};

struct PropertyAssertion {
  TermId instance;
  TermId property;
  TermId value;
  friend constexpr auto operator<=>(const PropertyAssertion &, const PropertyAssertion &) = default;
};

struct MaterializationStats {
  std::uint64_t n_transitive_types = 0;
  std::uint64_t n_individual_assertions = 0;
  std::uint64_t n_literal_assertions = 0;
  double t_load_s = 0;
  double t_closure_s = 0;
  double t_materialize_s = 0;

  friend bool operator==(const MaterializationStats &, const MaterializationStats &) = default;
};

/// All three sets are sorted and duplicate-free. In streaming mode the sets
/// stay empty and only the counts in `stats` are kept.
struct InferenceResult {
  std::vector<TypeAssertion> types;
  std::vector<PropertyAssertion> object_assertions;
  std::vector<PropertyAssertion> data_assertions;
  MaterializationStats stats;
  bool streamed = false;
};

/// Receives inferred assertions in sorted order, batch by batch.
class InferenceSink {
 public:
  virtual ~InferenceSink() = default;
  virtual void types(std::span<const TypeAssertion> batch) = 0;
  virtual void object_assertions(std::span<const PropertyAssertion> batch) = 0;
  virtual void data_assertions(std::span<const PropertyAssertion> batch) = 0;
};

/// Writes the three categories as N-Triples to separate streams.
class NTriplesInferenceSink final : public InferenceSink {
 public:
  NTriplesInferenceSink(const TermStore &store, TermId rdf_type, std::ostream &types, std::ostream &objects,
                        std::ostream &data)
      : store_(store), rdf_type_(rdf_type), types_(types, store), objects_(objects, store), data_(data, store) {}

  void types(std::span<const TypeAssertion> batch) override;
  void object_assertions(std::span<const PropertyAssertion> batch) override;
  void data_assertions(std::span<const PropertyAssertion> batch) override;

 private:
  const TermStore &store_;
  TermId rdf_type_;
  NTriplesWriter types_, objects_, data_;
};

struct MaterializeOptions {
  unsigned threads = 1;
  /// Instances per work unit; results are merged in unit order.
  std::size_t block_size = 4096;
  /// Drop property assertions already present in the input.
  bool dedup_against_input = false;
  /// Streaming mode when set: assertions go to the sink and are not retained.
  InferenceSink *sink = nullptr;
  /// Polled between work waves; may throw to abort.
  std::function<void()> check_cancel;
};

InferenceResult materialize(const ABox &abox, const TBoxIndex &tbox, const MaterializeOptions &options = {});

/// Exact cardinalities of a retained result; timings are carried through.
/// Throws std::logic_error when stored counts disagree with the sets.
MaterializationStats count_stats(const InferenceResult &result);

struct Violation {
  TermId instance;
  TermId class_a;
  TermId class_b;
  /// Number of disjoint pairs the instance violates; class_a/class_b is the
  /// most general of them.
  std::size_t violated_pairs = 0;

  friend bool operator==(const Violation &, const Violation &) = default;
};

/// One Violation per instance whose full type set hits a disjoint pair. Works
/// on streamed results too by recomputing types from the index.
std::vector<Violation> check_consistency(const ABox &abox, const InferenceResult &result,
                                         std::span<const ClassPair> disjoint, const TBoxIndex &tbox);

/// Sorted, deduplicated N-Triples rendering of each category.
void write_inferences(const InferenceResult &result, const TermStore &store, TermId rdf_type,
                      std::ostream &types, std::ostream &objects, std::ostream &data);

}  // namespace owlmat
