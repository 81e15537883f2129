#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace owlmat {

enum class TermKind : std::uint8_t { iri, blank, literal };

/// An RDF term. `value` holds the IRI, the blank-node label or the literal's
/// lexical form depending on `kind`; `datatype` and `lang` are only set for
/// literals.
struct Term {
  TermKind kind = TermKind::iri;
  std::string value;
  std::string datatype;
  std::string lang;

  static Term iri(std::string v) { return {TermKind::iri, std::move(v), {}, {}}; }
  static Term blank(std::string label) { return {TermKind::blank, std::move(label), {}, {}}; }
  static Term literal(std::string lexical, std::string datatype, std::string lang = {}) {
    return {TermKind::literal, std::move(lexical), std::move(datatype), std::move(lang)};
  }

  bool is_iri() const { return kind == TermKind::iri; }
  bool is_blank() const { return kind == TermKind::blank; }
  bool is_literal() const { return kind == TermKind::literal; }

  friend bool operator==(const Term &, const Term &) = default;
};

/// Dense handle for an interned term.
struct TermId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr TermId() = default;
  constexpr explicit TermId(std::uint32_t v) : value(v) {}

  constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
  friend constexpr auto operator<=>(TermId, TermId) = default;
};

inline constexpr TermId kNoTerm{};

class TermError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interns terms into dense ids 0..N-1. Single writer while building; after
/// freeze() the store is read-only and safe to share between threads.
class TermStore {
 public:
  TermStore();
  TermStore(const TermStore &) = delete;
  TermStore &operator=(const TermStore &) = delete;

  TermId intern(const Term &term);
  TermId intern_iri(std::string_view iri);
  TermId intern_blank(std::string_view label);
  TermId intern_literal(std::string_view lexical, std::string_view datatype,
                        std::string_view lang = {});

  /// Lookup without inserting; kNoTerm if absent.
  TermId find(const Term &term) const;
  TermId find_iri(std::string_view iri) const;

  const Term &resolve(TermId id) const;
  std::size_t size() const { return terms_.size(); }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  /// Allocates a fresh document ordinal for blank-node scoping.
  std::uint32_t next_document_ordinal() { return documents_++; }

 private:
  struct Key {
    TermKind kind;
    std::string_view value;
    std::string_view datatype;
    std::string_view lang;
    friend bool operator==(const Key &, const Key &) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const noexcept;
  };

  TermId lookup(const Key &key) const;
  TermId insert(Term term);

  std::deque<Term> terms_;
  std::unordered_map<Key, TermId, KeyHash> index_;
  std::uint32_t documents_ = 0;
  bool frozen_ = false;
};

/// Well-known vocabulary, interned once per store.
struct Vocabulary {
  TermId rdf_type;
  TermId rdfs_subclass_of;
  TermId owl_class;
  TermId owl_thing;
  TermId owl_restriction;
  TermId owl_on_property;
  TermId owl_has_value;
  TermId owl_disjoint_with;
  TermId owl_named_individual;
  TermId owl_object_property;
  TermId owl_datatype_property;

  explicit Vocabulary(TermStore &store);
};

namespace iri {
inline constexpr std::string_view rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view owl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view xsd = "http://www.w3.org/2001/XMLSchema#";

inline constexpr std::string_view rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view rdf_lang_string =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr std::string_view rdfs_subclass_of = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr std::string_view owl_class = "http://www.w3.org/2002/07/owl#Class";
inline constexpr std::string_view owl_thing = "http://www.w3.org/2002/07/owl#Thing";
inline constexpr std::string_view owl_restriction = "http://www.w3.org/2002/07/owl#Restriction";
inline constexpr std::string_view owl_on_property = "http://www.w3.org/2002/07/owl#onProperty";
inline constexpr std::string_view owl_has_value = "http://www.w3.org/2002/07/owl#hasValue";
inline constexpr std::string_view owl_disjoint_with = "http://www.w3.org/2002/07/owl#disjointWith";
inline constexpr std::string_view owl_named_individual = "http://www.w3.org/2002/07/owl#NamedIndividual";
inline constexpr std::string_view owl_object_property = "http://www.w3.org/2002/07/owl#ObjectProperty";
inline constexpr std::string_view owl_datatype_property =
    "http://www.w3.org/2002/07/owl#DatatypeProperty";
inline constexpr std::string_view xsd_string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view xsd_integer = "http://www.w3.org/2001/XMLSchema#integer";

/// True for IRIs in the rdf:, rdfs: or owl: namespaces.
bool is_builtin(std::string_view iri);
}  // namespace iri

}  // namespace owlmat

template <>
struct std::hash<owlmat::TermId> {
  std::size_t operator()(owlmat::TermId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};
