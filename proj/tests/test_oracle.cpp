// The oracle is checked against hand-derived values only; it never sees the
// materializer here.
#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "owlmat/oracle.hpp"
#include "owlmat/rdf_io.hpp"

using namespace owlmat;
using fixtures::clgo;
using fixtures::clgr;

namespace {

struct Loaded {
  TermStore store;
  Vocabulary vocab{store};
  TripleSet input;
};

std::unique_ptr<Loaded> load_file(const std::string &path) {
  auto l = std::make_unique<Loaded>();
  parse_file(path, l->store, [&](const Triple &t) { l->input.insert(t); });
  return l;
}

std::unique_ptr<Loaded> load_text(const std::string &text) {
  auto l = std::make_unique<Loaded>();
  parse_string(text, l->store, [&](const Triple &t) { l->input.insert(t); });
  return l;
}

std::set<std::pair<std::string, std::string>> type_names(const Loaded &l, const OracleSplit &s) {
  std::set<std::pair<std::string, std::string>> out;
  for (const TypeAssertion &a : s.types) out.emplace(l.store.resolve(a.instance).value, l.store.resolve(a.cls).value);
  return out;
}

TEST(Oracle, Fig2) {
  auto l = load_file(fixtures::data("clg_10.ttl"));
  TripleSet derived = naive_fixpoint(l->input, l->vocab);
  OracleSplit s = split_oracle_output(derived, l->store, l->vocab);

  const std::string icshp = clgr("International_Center_on_Small_Hydro_Power");
  const std::string brigade = clgr("46th_Mixed_Brigade");
  const std::string thing(iri::owl_thing);
  EXPECT_EQ(type_names(*l, s), (std::set<std::pair<std::string, std::string>>{
                                   {icshp, clgo("Organization_based_in_China")},
                                   {icshp, clgo("International_organization")},
                                   {icshp, clgo("Organization_based_in_Asia")},
                                   {icshp, clgo("Organization")},
                                   {icshp, clgo("Agent")},
                                   {icshp, thing},
                                   {brigade, clgo("Organization_disestablished_in_1939")},
                                   {brigade, clgo("Organization")},
                                   {brigade, clgo("Agent")},
                                   {brigade, thing},
                               }));
  ASSERT_EQ(s.object_assertions.size(), 1u);
  const PropertyAssertion &obj = *s.object_assertions.begin();
  EXPECT_EQ(l->store.resolve(obj.instance).value, icshp);
  EXPECT_EQ(l->store.resolve(obj.property).value, clgo("headquarter"));
  EXPECT_EQ(l->store.resolve(obj.value).value, clgr("China"));
  ASSERT_EQ(s.data_assertions.size(), 1u);
  const PropertyAssertion &lit = *s.data_assertions.begin();
  EXPECT_EQ(l->store.resolve(lit.instance).value, brigade);
  EXPECT_EQ(l->store.resolve(lit.value), Term::literal("1939", std::string(iri::xsd_integer)));

  // 12 instance-level triples; the rest are class-level subClassOf triples.
  std::size_t instance_level = 0;
  for (const Triple &t : derived)
    if (t.predicate != l->vocab.rdfs_subclass_of) ++instance_level;
  EXPECT_EQ(instance_level, 12u);
  EXPECT_EQ(derived.size() - instance_level, s.subclass.size());
}

TEST(Oracle, NoTypeTriplesNoInstanceInferences) {
  auto l = load_text(
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
      "@prefix e: <http://e/> .\n"
      "e:A rdfs:subClassOf e:B . e:C rdfs:subClassOf [ a owl:Restriction ; owl:onProperty e:p ; owl:hasValue e:v ] .\n"
      "e:x e:p e:y .\n");
  EXPECT_TRUE(naive_fixpoint(l->input, l->vocab).empty());
}

TEST(Oracle, ChainSaturation) {
  for (std::size_t n : {1u, 2u, 5u, 12u}) {
    std::string doc = "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n@prefix e: <http://e/> .\n";
    for (std::size_t i = 0; i < n; ++i) doc += "e:C" + std::to_string(i) + " rdfs:subClassOf e:C" + std::to_string(i + 1) + " .\n";
    doc += "e:x a e:C0 .\n";
    auto l = load_text(doc);
    OracleSplit s = split_oracle_output(naive_fixpoint(l->input, l->vocab), l->store, l->vocab);
    EXPECT_EQ(s.types.size(), n);
    EXPECT_EQ(s.subclass.size(), n * (n - 1) / 2);
  }
}

TEST(Oracle, FixpointReached) {
  for (const char *f : {"clg_10.ttl", "swedish_rock.ttl"}) {
    auto l = load_file(fixtures::data(f));
    TripleSet all = l->input;
    TripleSet derived = naive_fixpoint(l->input, l->vocab);
    all.insert(derived.begin(), derived.end());
    EXPECT_TRUE(apply_rules_once(all, l->vocab).empty());
    for (const Triple &t : derived) EXPECT_FALSE(l->input.contains(t));
  }
}

TEST(Oracle, CyclesTerminate) {
  auto l = load_text(
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n@prefix e: <http://e/> .\n"
      "e:A rdfs:subClassOf e:B . e:B rdfs:subClassOf e:A . e:B rdfs:subClassOf e:C .\ne:x a e:A .\n");
  OracleSplit s = split_oracle_output(naive_fixpoint(l->input, l->vocab), l->store, l->vocab);
  EXPECT_EQ(type_names(*l, s), (std::set<std::pair<std::string, std::string>>{{"http://e/x", "http://e/B"},
                                                                              {"http://e/x", "http://e/C"}}));
  // A subClassOf A, B subClassOf B, A subClassOf C.
  EXPECT_EQ(s.subclass.size(), 3u);
}

TEST(Oracle, SplitDropsNamedIndividual) {
  auto l = load_text(
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n@prefix owl: <http://www.w3.org/2002/07/owl#> .\n"
      "@prefix e: <http://e/> .\n"
      "e:A rdfs:subClassOf owl:NamedIndividual .\ne:x a e:A .\n");
  OracleSplit s = split_oracle_output(naive_fixpoint(l->input, l->vocab), l->store, l->vocab);
  EXPECT_TRUE(s.types.empty());
}

TEST(Oracle, GuardRejectsLargeInputs) {
  TermStore store;
  Vocabulary v(store);
  TripleSet big;
  for (std::size_t i = 0; i <= kOracleTripleLimit; ++i)
    big.insert({store.intern_iri("http://e/s" + std::to_string(i)), v.rdf_type, v.owl_class});
  try {
    naive_fixpoint(big, v);
    FAIL();
  } catch (const OracleGuardError &e) {
    EXPECT_EQ(e.size(), kOracleTripleLimit + 1);
    EXPECT_NE(std::string(e.what()).find(std::to_string(kOracleTripleLimit + 1)), std::string::npos);
  }
  TripleSet small(big.begin(), std::next(big.begin(), 10));
  EXPECT_THROW(naive_fixpoint(small, v, 5), OracleGuardError);
}

}  // namespace
