#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "owlmat/rdf_io.hpp"
#include "owlmat/tbox.hpp"
#include "owlmat/term_store.hpp"

namespace owlmat {

class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SampleSpec {
  TermId root;
  std::size_t leaf_limit = 1;
  bool drop_disjointness = true;
};

/// Strict descendants of `root` without subclasses, ordered by IRI and
/// truncated to `limit`. With root = owl:Thing every leaf class of the whole
/// hierarchy qualifies, reachable or not.
std::vector<TermId> find_leaves(const TBoxIndex &tbox, const TermStore &store, const Vocabulary &vocab,
                                TermId root, std::size_t limit);

/// Which nodes the extraction pass copies triples for.
struct SubsetPlan {
  std::vector<TermId> leaves;       // sorted by id
  std::vector<TermId> class_nodes;  // leaves, their named superclasses and restriction anchors
  std::vector<TermId> properties;   // restriction properties
  std::vector<TermId> values;       // restriction values
};

SubsetPlan plan_subset(const TBoxIndex &tbox, std::span<const TermId> leaves);

/// Second pass of the sampler: fed the dump triple by triple, keeps the ones
/// the leaf-subtree construction selects.
class SubsetExtractor {
 public:
  SubsetExtractor(const SubsetPlan &plan, const SampleSpec &spec, const TermStore &store, const Vocabulary &vocab);

  void add(const Triple &t);
  /// Sorted and deduplicated.
  std::vector<Triple> finish();

 private:
  enum Role : std::uint8_t { kLeaf = 1, kClassNode = 2, kProperty = 4, kValue = 8 };
  std::uint8_t role(TermId id) const { return id.value < roles_.size() ? roles_[id.value] : 0; }

  const TermStore &store_;
  const Vocabulary &vocab_;
  bool drop_disjointness_;
  std::vector<std::uint8_t> roles_;
  std::vector<Triple> out_;
};

std::vector<Triple> extract_subset(std::span<const Triple> dump, const TBoxIndex &tbox,
                                   std::span<const TermId> leaves, const SampleSpec &spec, const TermStore &store,
                                   const Vocabulary &vocab);

/// Dangling-reference check: every class in a subclass edge, every
/// restriction property and every class used for typing must be described
/// (be the subject of some triple) within the subset; every restriction must
/// be complete. Returns one message per problem.
std::vector<std::string> validate_closedness(std::span<const Triple> subset, const TermStore &store,
                                             const Vocabulary &vocab);

}  // namespace owlmat
