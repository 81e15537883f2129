#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "owlmat/materializer.hpp"
#include "owlmat/oracle.hpp"
#include "owlmat/rdf_io.hpp"
#include "owlmat/sampler.hpp"
#include "owlmat/tbox.hpp"
#include "owlmat/term_store.hpp"

namespace owlmat {

/// A parsed ontology with its terminology and assertion indexes.
struct Dataset {
  std::unique_ptr<TermStore> store = std::make_unique<TermStore>();
  Vocabulary vocab{*store};
  std::vector<Triple> triples;
  TBoxIndex tbox;
  ABox abox;
  double t_parse_s = 0;
  double t_tbox_s = 0;
  double t_abox_s = 0;
};

struct LoadOptions {
  /// Polled while parsing and between phases; may throw to abort.
  std::function<void()> check_cancel;
};

Dataset load_dataset(std::span<const std::string> paths, const LoadOptions &options = {});
Dataset load_dataset_from_string(std::string_view text);

/// Dataset size figures in the conventions of the benchmark tables.
struct Census {
  std::uint64_t triples = 0;
  std::uint64_t classes = 0;
  std::uint64_t restrictions = 0;
  std::uint64_t instances = 0;
  std::uint64_t subclass_edges = 0;
  std::uint64_t direct_types = 0;
  std::uint64_t disjoint_pairs = 0;
};

Census census(const Dataset &dataset);

struct RunOptions {
  unsigned threads = 1;
  bool streaming = false;
  bool dedup_against_input = false;
  /// Receives inferred_types.nt, inferred_relations.nt, inferred_literals.nt.
  /// Required in streaming mode.
  std::optional<std::filesystem::path> output_dir;
  std::function<void()> check_cancel;
};

inline constexpr const char *kTypesFile = "inferred_types.nt";
inline constexpr const char *kRelationsFile = "inferred_relations.nt";
inline constexpr const char *kLiteralsFile = "inferred_literals.nt";
inline constexpr const char *kStatsFile = "stats.json";

/// Materializes a loaded dataset; load and closure timings are copied from
/// the dataset into the stats.
InferenceResult run_materialization(const Dataset &dataset, const RunOptions &options);

/// Leaf-subtree sample of one or more dump files. The dump is streamed
/// twice: once to index the terminology, once to copy the selected triples.
struct Sample {
  std::unique_ptr<TermStore> store = std::make_unique<TermStore>();
  Vocabulary vocab{*store};
  std::vector<TermId> leaves;  // IRI order
  std::vector<Triple> triples;  // sorted
  std::vector<std::string> closedness_issues;
};

Sample sample_files(std::span<const std::string> paths, std::string_view root_iri, std::size_t leaf_limit,
                    bool keep_disjointness);

/// Differential run of the materializer against the naive fixpoint oracle.
/// Property assertions are compared with dedup_against_input on, matching
/// the oracle's fixpoint-minus-input output.
struct OracleComparison {
  OracleSplit oracle;
  InferenceResult engine;
  /// Superclass-closure pairs not asserted in the input.
  std::set<std::pair<TermId, TermId>> engine_subclass;
  std::vector<std::string> oracle_only;  // N-Triples lines
  std::vector<std::string> engine_only;
  bool agree() const { return oracle_only.empty() && engine_only.empty(); }
};

OracleComparison compare_with_oracle(const Dataset &dataset, unsigned threads = 1);

void write_stats_json(const MaterializationStats &stats, std::ostream &out);

/// Peak resident set size of this process in MiB, 0 when unavailable.
double peak_memory_mb();

}  // namespace owlmat
