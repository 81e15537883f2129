#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <utility>

#include "owlmat/materializer.hpp"
#include "owlmat/rdf_io.hpp"
#include "owlmat/term_store.hpp"

namespace owlmat {

using TripleSet = std::set<Triple>;

class OracleGuardError : public std::runtime_error {
 public:
  OracleGuardError(std::size_t size, std::size_t limit);
  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
};

inline constexpr std::size_t kOracleTripleLimit = 100'000;

/// Brute-force saturation over raw triples with three rules:
///   x type C, C subClassOf D (D not a restriction)         => x type D
///   x type C, C subClassOf R, R a Restriction,
///     R onProperty p, R hasValue v                         => x p v
///   C subClassOf D, D subClassOf E (neither a restriction) => C subClassOf E
/// Returns the fixpoint minus the input. Ground truth for small inputs only.
TripleSet naive_fixpoint(const TripleSet &input, const Vocabulary &vocab,
                         std::size_t limit = kOracleTripleLimit);

/// One round of all rules; returns only triples not already in `triples`.
TripleSet apply_rules_once(const TripleSet &triples, const Vocabulary &vocab);

/// Oracle output in the materializer's categories.
struct OracleSplit {
  std::set<TypeAssertion> types;
  std::set<PropertyAssertion> object_assertions;
  std::set<PropertyAssertion> data_assertions;
  /// Derived class-level subClassOf pairs (rule three).
  std::set<std::pair<TermId, TermId>> subclass;
};

OracleSplit split_oracle_output(const TripleSet &derived, const TermStore &store, const Vocabulary &vocab);

}  // namespace owlmat
