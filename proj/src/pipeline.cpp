#include "owlmat/pipeline.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <json.hpp>

namespace owlmat {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void index_dataset(Dataset &ds, const LoadOptions &options) {
  auto start = Clock::now();
  TBoxBuilder builder(*ds.store, ds.vocab);
  builder.add(ds.triples);
  ds.tbox = builder.build();
  ds.t_tbox_s = seconds_since(start);
  if (options.check_cancel) options.check_cancel();

  start = Clock::now();
  ds.abox = load_abox(ds.triples, ds.tbox, *ds.store, ds.vocab);
  ds.t_abox_s = seconds_since(start);
  ds.store->freeze();
}

}  // namespace

Dataset load_dataset(std::span<const std::string> paths, const LoadOptions &options) {
  Dataset ds;
  auto start = Clock::now();
  for (const std::string &path : paths) {
    ParseOptions po;
    if (options.check_cancel) po.on_progress = [&](std::uint64_t) { options.check_cancel(); };
    parse_file(path, *ds.store, [&](const Triple &t) { ds.triples.push_back(t); }, po);
  }
  ds.t_parse_s = seconds_since(start);
  if (options.check_cancel) options.check_cancel();
  index_dataset(ds, options);
  return ds;
}

Dataset load_dataset_from_string(std::string_view text) {
  Dataset ds;
  auto start = Clock::now();
  parse_string(text, *ds.store, [&](const Triple &t) { ds.triples.push_back(t); });
  ds.t_parse_s = seconds_since(start);
  index_dataset(ds, {});
  return ds;
}

Census census(const Dataset &ds) {
  Census c;
  c.triples = ds.triples.size();
  c.classes = ds.tbox.class_count();
  c.restrictions = ds.tbox.restriction_count();
  c.instances = ds.abox.size();
  c.subclass_edges = ds.tbox.subclass_edge_count();
  c.direct_types = ds.abox.direct_type_count();
  c.disjoint_pairs = ds.tbox.disjoint_pairs().size();
  return c;
}

InferenceResult run_materialization(const Dataset &ds, const RunOptions &options) {
  MaterializeOptions mo;
  mo.threads = options.threads;
  mo.dedup_against_input = options.dedup_against_input;
  mo.check_cancel = options.check_cancel;

  std::optional<std::ofstream> types, relations, literals;
  std::optional<NTriplesInferenceSink> sink;
  if (options.output_dir) {
    std::filesystem::create_directories(*options.output_dir);
    auto open = [&](std::optional<std::ofstream> &f, const char *name) {
      f.emplace(*options.output_dir / name, std::ios::binary);
      if (!*f) throw IoError("cannot write " + (*options.output_dir / name).string());
    };
    open(types, kTypesFile);
    open(relations, kRelationsFile);
    open(literals, kLiteralsFile);
  }
  if (options.streaming) {
    if (!options.output_dir) throw std::invalid_argument("streaming mode needs an output directory");
    sink.emplace(*ds.store, ds.vocab.rdf_type, *types, *relations, *literals);
    mo.sink = &*sink;
  }

  InferenceResult result = materialize(ds.abox, ds.tbox, mo);
  result.stats.t_load_s = ds.t_parse_s + ds.t_abox_s;
  result.stats.t_closure_s = ds.t_tbox_s;
  if (options.output_dir && !options.streaming)
    write_inferences(result, *ds.store, ds.vocab.rdf_type, *types, *relations, *literals);
  for (auto *f : {&types, &relations, &literals}) {
    if (!*f) continue;
    (*f)->flush();
    if (!**f) throw IoError("write failure in " + options.output_dir->string());
  }
  return result;
}

Sample sample_files(std::span<const std::string> paths, std::string_view root_iri, std::size_t leaf_limit,
                    bool keep_disjointness) {
  Sample sample;
  TermStore &store = *sample.store;
  std::vector<std::uint32_t> ordinals;
  TBoxBuilder builder(store, sample.vocab);
  for (const std::string &path : paths) {
    ParseSummary summary = parse_file(path, store, [&](const Triple &t) { builder.add(t); });
    ordinals.push_back(summary.document_ordinal);
  }
  TBoxIndex tbox = builder.build();

  TermId root = store.find_iri(root_iri);
  if (!root.valid()) throw SamplerError("unknown root class <" + std::string(root_iri) + ">");
  SampleSpec spec{root, leaf_limit, !keep_disjointness};
  sample.leaves = find_leaves(tbox, store, sample.vocab, root, leaf_limit);
  if (!sample.leaves.empty()) {
    SubsetPlan plan = plan_subset(tbox, sample.leaves);
    SubsetExtractor extractor(plan, spec, store, sample.vocab);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      ParseOptions po;
      po.document_ordinal = ordinals[i];
      parse_file(paths[i], store, [&](const Triple &t) { extractor.add(t); }, po);
    }
    sample.triples = extractor.finish();
  }
  sample.closedness_issues = validate_closedness(sample.triples, store, sample.vocab);
  return sample;
}

namespace {

template <typename T>
void diff_sets(const std::set<T> &oracle, const std::set<T> &engine, const std::function<Triple(const T &)> &as_triple,
               const TermStore &store, OracleComparison &out) {
  auto line = [&](const T &x) {
    std::string s = to_ntriples(std::span<const Triple>(std::array{as_triple(x)}), store);
    s.pop_back();
    return s;
  };
  for (const T &x : oracle)
    if (!engine.contains(x)) out.oracle_only.push_back(line(x));
  for (const T &x : engine)
    if (!oracle.contains(x)) out.engine_only.push_back(line(x));
}

}  // namespace

OracleComparison compare_with_oracle(const Dataset &ds, unsigned threads) {
  OracleComparison cmp;
  TripleSet input(ds.triples.begin(), ds.triples.end());
  cmp.oracle = split_oracle_output(naive_fixpoint(input, ds.vocab), *ds.store, ds.vocab);

  MaterializeOptions mo;
  mo.threads = threads;
  mo.dedup_against_input = true;
  cmp.engine = materialize(ds.abox, ds.tbox, mo);
  for (TermId c : ds.tbox.named_classes())
    for (TermId d : ds.tbox.superclass_closure(c))
      if (!input.contains(Triple{c, ds.vocab.rdfs_subclass_of, d})) cmp.engine_subclass.emplace(c, d);

  const TermId type = ds.vocab.rdf_type, sub = ds.vocab.rdfs_subclass_of;
  std::set<TypeAssertion> types(cmp.engine.types.begin(), cmp.engine.types.end());
  std::set<PropertyAssertion> objects(cmp.engine.object_assertions.begin(), cmp.engine.object_assertions.end());
  std::set<PropertyAssertion> data(cmp.engine.data_assertions.begin(), cmp.engine.data_assertions.end());
  auto prop = [](const PropertyAssertion &a) { return Triple{a.instance, a.property, a.value}; };
  diff_sets<TypeAssertion>(cmp.oracle.types, types, [&](const TypeAssertion &a) { return Triple{a.instance, type, a.cls}; },
                           *ds.store, cmp);
  diff_sets<PropertyAssertion>(cmp.oracle.object_assertions, objects, prop, *ds.store, cmp);
  diff_sets<PropertyAssertion>(cmp.oracle.data_assertions, data, prop, *ds.store, cmp);
  diff_sets<std::pair<TermId, TermId>>(
      cmp.oracle.subclass, cmp.engine_subclass,
      [&](const std::pair<TermId, TermId> &p) { return Triple{p.first, sub, p.second}; }, *ds.store, cmp);
  return cmp;
}

void write_stats_json(const MaterializationStats &s, std::ostream &out) {
  nlohmann::ordered_json j;
  j["n_transitive_types"] = s.n_transitive_types;
  j["n_individual_assertions"] = s.n_individual_assertions;
  j["n_literal_assertions"] = s.n_literal_assertions;
  j["t_load_s"] = s.t_load_s;
  j["t_closure_s"] = s.t_closure_s;
  j["t_materialize_s"] = s.t_materialize_s;
  out << j.dump(2) << '\n';
}

double peak_memory_mb() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stod(line.substr(6)) / 1024.0;
  }
  return 0;
}

}  // namespace owlmat
