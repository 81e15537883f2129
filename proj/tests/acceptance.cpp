// Acceptance run: one PASS/FAIL line per criterion. Exit status 0 iff all pass.
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "owlmat/bench.hpp"
#include "owlmat/log.hpp"
#include "owlmat/pipeline.hpp"
#include "synth.hpp"

using namespace owlmat;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kFig2BudgetS = 1.0;
constexpr std::uint64_t kOracleSeeds = 250;
constexpr double kOracleBudgetS = 120.0;
constexpr std::size_t kScaleTriples = 4'641'400;
constexpr double kScaleBudgetS = 600.0;
constexpr double kScaleMemoryMb = 16.0 * 1024;
constexpr unsigned kScaleThreads = 8;

const std::string kClgo = synth::kClgo;
const std::string kClgr = synth::kClgr;
const std::string kType(iri::rdf_type);

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string nt(const std::string &s, const std::string &p, const std::string &o) {
  return "<" + s + "> <" + p + "> " + o + " .";
}
std::string angle(const std::string &iri) { return "<" + iri + ">"; }

std::set<std::string> split_lines(const std::string &text) {
  std::set<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.insert(l);
  return out;
}

std::set<std::string> inference_lines(const InferenceResult &r, const Dataset &ds) {
  std::ostringstream t, o, d;
  write_inferences(r, *ds.store, ds.vocab.rdf_type, t, o, d);
  return split_lines(t.str() + o.str() + d.str());
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Writes a synthetic dump once and reuses it on later runs.
fs::path cached_dump(const fs::path &dir, const std::string &name, const synth::DumpSpec &spec) {
  fs::path path = dir / (name + ".nt");
  fs::path done = dir / (name + ".done");
  if (fs::exists(done) && fs::exists(path)) return path;
  {
    std::ofstream out(path, std::ios::binary);
    synth::write_dump(out, spec);
    if (!out) throw std::runtime_error("cannot write " + path.string());
  }
  std::ofstream(done) << "ok\n";
  return path;
}

synth::DumpSpec ladder_dump_spec() {
  synth::DumpSpec spec;
  spec.seed = 11;
  spec.classes = 3000;
  spec.restrictions = 400;
  spec.instances = 20000;
  spec.value_individuals = 300;
  return spec;
}

Outcome fig2_exact(const std::string &data_dir) {
  auto start = std::chrono::steady_clock::now();
  Dataset ds = load_dataset(std::vector<std::string>{data_dir + "/clg_10.ttl"});
  InferenceResult r = materialize(ds.abox, ds.tbox);
  double elapsed = seconds_since(start);

  const std::string icshp = kClgr + "International_Center_on_Small_Hydro_Power";
  const std::string brigade = kClgr + "46th_Mixed_Brigade";
  std::set<std::string> expected;
  for (const char *c : {"Organization_based_in_China", "Organization_based_in_Asia", "International_organization",
                        "Organization", "Agent"})
    expected.insert(nt(icshp, kType, angle(kClgo + c)));
  expected.insert(nt(icshp, kType, angle(std::string(iri::owl_thing))));
  for (const char *c : {"Organization_disestablished_in_1939", "Organization", "Agent"})
    expected.insert(nt(brigade, kType, angle(kClgo + c)));
  expected.insert(nt(brigade, kType, angle(std::string(iri::owl_thing))));
  expected.insert(nt(icshp, kClgo + "headquarter", angle(kClgr + "China")));
  expected.insert(nt(brigade, kClgo + "activeYearsEndYear", "\"1939\"^^<http://www.w3.org/2001/XMLSchema#integer>"));

  MaterializationStats s = count_stats(r);
  bool exact = inference_lines(r, ds) == expected && s.n_transitive_types == 10 && s.n_individual_assertions == 1 &&
               s.n_literal_assertions == 1;
  return {exact && elapsed < kFig2BudgetS,
          fmt("types=%llu individuals=%llu literals=%llu, %.4fs (budget %.1fs)", (unsigned long long)s.n_transitive_types,
              (unsigned long long)s.n_individual_assertions, (unsigned long long)s.n_literal_assertions, elapsed,
              kFig2BudgetS)};
}

Outcome dennis(const std::string &data_dir) {
  Dataset ds = load_dataset(std::vector<std::string>{data_dir + "/swedish_rock.ttl"});
  InferenceResult r = materialize(ds.abox, ds.tbox);
  const std::string d = kClgr + "Dennis_Lyxzén";
  const std::set<std::string> expected{
      nt(d, kType, angle(kClgo + "Swedish_rock_musician")),
      nt(d, kType, angle(kClgo + "Rock_musician")),
      nt(d, kType, angle(kClgo + "Swedish_musician")),
      nt(d, kClgo + "birthPlace", angle(kClgr + "Sweden")),
      nt(d, kClgo + "genre", angle(kClgr + "Rock_music")),
      nt(d, kClgo + "occupation", angle(kClgr + "Musician")),
  };
  auto got = inference_lines(r, ds);
  return {got == expected, fmt("%zu axioms derived, 6 expected", got.size())};
}

Outcome capability_matrix(const std::string &data_dir) {
  Dataset ds = load_dataset(std::vector<std::string>{data_dir + "/clg_10.ttl"});
  InferenceResult r = materialize(ds.abox, ds.tbox);
  MaterializationStats s = count_stats(r);
  bool subclass = s.n_transitive_types == 10;
  bool individuals = s.n_individual_assertions == 1;
  bool literals = s.n_literal_assertions == 1;

  // Person is disjoint with Organization and therefore with each of its five
  // named subclasses.
  auto pairs = ds.tbox.propagate_disjointness();
  TermId person = ds.store->find_iri(kClgo + "Person");
  std::size_t with_person = 0;
  for (const ClassPair &p : pairs)
    if (p.first == person || p.second == person) ++with_person;
  TermId military = ds.store->find_iri(kClgo + "Military_unit_or_formation_disestablished_in_1939");
  bool disjointness = pairs.size() == 7 && with_person == 7 &&
                      std::binary_search(pairs.begin(), pairs.end(), ClassPair::of(person, military));

  int passed = subclass + disjointness + individuals + literals;
  return {passed == 4, fmt("subclass=%s disjointness=%s individuals=%s literals=%s", subclass ? "yes" : "no",
                           disjointness ? "yes" : "no", individuals ? "yes" : "no", literals ? "yes" : "no")};
}

struct LadderStep {
  std::string root;
  std::size_t leaves = 0;
  Sample sample;
};

std::vector<LadderStep> sample_ladder(const fs::path &dump) {
  std::vector<LadderStep> ladder;
  const std::vector<std::string> paths{dump.string()};
  // Smaller subsets from Organization, the largest from the whole hierarchy.
  for (auto [root, n] : std::vector<std::pair<std::string, std::size_t>>{
           {kClgo + "Organization", 1}, {kClgo + "Organization", 10}, {kClgo + "Organization", 100},
           {std::string(iri::owl_thing), 1000}})
    ladder.push_back({root, n, sample_files(paths, root, n, false)});
  return ladder;
}

std::optional<std::vector<std::string>> published_subsets(const std::string &dir) {
  if (dir.empty()) return std::nullopt;
  std::vector<std::string> found;
  for (const char *name : {"clg_10e2", "clg_10e3", "clg_10e4", "clg_10e5"}) {
    std::string hit;
    for (const char *ext : {".nt", ".ttl", ".nt.gz", ".ttl.gz"})
      if (fs::exists(fs::path(dir) / (std::string(name) + ext))) hit = (fs::path(dir) / (std::string(name) + ext)).string();
    if (hit.empty()) return std::nullopt;
    found.push_back(hit);
  }
  return found;
}

Outcome ladder_counts(const std::string &data_dir, const std::string &ladder_dir,
                      const std::vector<LadderStep> &ladder) {
  if (auto files = published_subsets(ladder_dir)) {
    BenchConfig c;
    c.datasets = *files;
    c.manifest_path = data_dir + "/caligraph_manifest.json";
    c.threads = kScaleThreads;
    BenchReport r = run_benchmark(c);
    bool ok = r.exit_code() == 0 && r.mismatches.empty() && r.rows.size() == 4;
    return {ok, fmt("published subsets, %zu rows, %zu mismatches", r.rows.size(), r.mismatches.size())};
  }
  // Substitution: self-sampled subsets checked against the oracle.
  std::string detail = "published subsets unavailable; self-sampled ladder checked against the oracle:";
  bool ok = true;
  for (const LadderStep &step : ladder) {
    Dataset ds = load_dataset_from_string(to_ntriples(step.sample.triples, *step.sample.store));
    OracleComparison cmp = compare_with_oracle(ds, kScaleThreads);
    MaterializationStats s = count_stats(cmp.engine);
    ok = ok && cmp.agree() && !step.sample.triples.empty();
    detail += fmt(" N=%zu %zu triples (%llu,%llu,%llu)%s;", step.leaves, step.sample.triples.size(),
                  (unsigned long long)s.n_transitive_types, (unsigned long long)s.n_individual_assertions,
                  (unsigned long long)s.n_literal_assertions, cmp.agree() ? "" : " DIFFERS");
  }
  return {ok, detail};
}

Outcome oracle_equivalence() {
  auto start = std::chrono::steady_clock::now();
  std::uint64_t disagree = 0, triples = 0;
  for (std::uint64_t seed = 0; seed < kOracleSeeds; ++seed) {
    Dataset ds = load_dataset_from_string(synth::random_ontology(seed));
    triples += ds.triples.size();
    if (!compare_with_oracle(ds).agree()) ++disagree;
  }
  double elapsed = seconds_since(start);
  return {disagree == 0 && elapsed < kOracleBudgetS,
          fmt("%llu ontologies (%llu triples), %llu disagree, %.1fs (budget %.0fs)", (unsigned long long)kOracleSeeds,
              (unsigned long long)triples, (unsigned long long)disagree, elapsed, kOracleBudgetS)};
}

Outcome scalability(const fs::path &work, const std::string &full_path) {
  synth::DumpSpec spec;
  spec.seed = 5;
  spec.classes = 99'923;
  spec.restrictions = 12'147;
  spec.instances = 1'900'000;
  spec.value_individuals = 68'000;
  spec.triples = kScaleTriples;
  fs::path dump = cached_dump(work, "clg_10e5_synthetic", spec);

  auto start = std::chrono::steady_clock::now();
  Dataset ds = load_dataset(std::vector<std::string>{dump.string()});
  RunOptions o;
  o.threads = kScaleThreads;
  InferenceResult r = run_materialization(ds, o);
  double elapsed = seconds_since(start);
  double mem = peak_memory_mb();
  MaterializationStats s = count_stats(r);
  Census c = census(ds);
  bool ok = c.triples == kScaleTriples && elapsed < kScaleBudgetS && mem > 0 && mem < kScaleMemoryMb;
  std::string detail = fmt(
      "synthetic %llu triples, %llu classes, %llu instances -> (%llu,%llu,%llu) in %.1fs (budget %.0fs), "
      "peak %.0f MB (budget %.0f MB), %u threads on %u cores",
      (unsigned long long)c.triples, (unsigned long long)c.classes, (unsigned long long)c.instances,
      (unsigned long long)s.n_transitive_types, (unsigned long long)s.n_individual_assertions,
      (unsigned long long)s.n_literal_assertions, elapsed, kScaleBudgetS, mem, kScaleMemoryMb, kScaleThreads,
      std::thread::hardware_concurrency());

  if (!full_path.empty()) {
    // Optional stretch run; reported but not part of the verdict.
    BenchConfig bc;
    bc.datasets = {full_path};
    bc.timeout_s = 7200;
    bc.threads = kScaleThreads;
    bc.streaming = true;
    bc.output_dir = (work / "clg_full_out").string();
    BenchReport br = run_benchmark(bc);
    const BenchRow &row = br.rows.at(0);
    detail += fmt("; clg_full stretch: %s (%llu,%llu,%llu) in %.0fs", std::string(to_string(row.status)).c_str(),
                  (unsigned long long)row.inf_types, (unsigned long long)row.inf_individuals,
                  (unsigned long long)row.inf_literals, row.t_parse_s + row.t_tbox_s + row.t_mat_s);
  } else {
    detail += "; clg_full stretch not run";
  }
  return {ok, detail};
}

Outcome determinism(const fs::path &work, const std::string &data_dir) {
  synth::DumpSpec spec;
  spec.seed = 7;
  spec.classes = 5000;
  spec.restrictions = 600;
  spec.instances = 60000;
  spec.value_individuals = 500;
  fs::path dump = cached_dump(work, "determinism", spec);

  bool ok = true;
  std::size_t bytes = 0;
  for (const std::string &input : {dump.string(), data_dir + "/clg_10.ttl"}) {
    std::vector<std::string> outputs;
    std::vector<MaterializationStats> counts;
    int variant = 0;
    for (auto [threads, streaming] : std::vector<std::pair<unsigned, bool>>{{1, false}, {8, false}, {3, true}}) {
      Dataset ds = load_dataset(std::vector<std::string>{input});
      fs::path out = work / ("det_" + std::to_string(variant++));
      fs::remove_all(out);
      RunOptions o;
      o.threads = threads;
      o.streaming = streaming;
      o.output_dir = out;
      MaterializationStats s = count_stats(run_materialization(ds, o));
      s.t_load_s = s.t_closure_s = s.t_materialize_s = 0;
      counts.push_back(s);
      outputs.push_back(read_file(out / kTypesFile) + read_file(out / kRelationsFile) + read_file(out / kLiteralsFile));
    }
    for (std::size_t i = 1; i < outputs.size(); ++i) ok = ok && outputs[i] == outputs[0] && counts[i] == counts[0];
    ok = ok && !outputs[0].empty();
    bytes += outputs[0].size();
  }
  return {ok, fmt("threads 1/8 in memory and 3 streaming, %zu output bytes compared per run", bytes)};
}

Outcome closedness(const std::vector<LadderStep> &ladder, const std::string &data_dir) {
  std::string detail;
  bool ok = true;
  auto check = [&](const std::string &label, const Sample &s) {
    std::size_t warnings = 0;
    set_log_handler([&](LogLevel level, std::string_view) { warnings += level == LogLevel::warning; });
    Dataset ds = load_dataset_from_string(to_ntriples(s.triples, *s.store));
    InferenceResult standalone = materialize(ds.abox, ds.tbox);
    set_log_handler([](LogLevel, std::string_view) {});
    bool self_contained = warnings == 0 && count_stats(standalone).n_transitive_types > 0;
    ok = ok && s.closedness_issues.empty() && self_contained;
    detail += fmt(" %s: %zu issues, %zu warnings;", label.c_str(), s.closedness_issues.size(), warnings);
  };
  check("fig2 Organization", sample_files(std::vector<std::string>{data_dir + "/clg_10.ttl"},
                                          kClgo + "Organization", 10, false));
  for (const LadderStep &step : ladder) check("N=" + std::to_string(step.leaves), step.sample);
  return {ok, detail};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"owlmat acceptance run"};
  std::string work_dir = "acceptance_work", ladder_dir, full_path, data_dir = OWLMAT_DATA_DIR;
  app.add_option("--work-dir", work_dir, "Scratch directory; synthetic dumps are cached here");
  app.add_option("--ladder-dir", ladder_dir, "Directory holding clg_10e2..clg_10e5 subset files");
  app.add_option("--clg-full", full_path, "Optional full dump for the stretch run");
  app.add_option("--data-dir", data_dir, "Fixture directory");
  CLI11_PARSE(app, argc, argv);

  fs::create_directories(work_dir);
  set_log_handler([](LogLevel, std::string_view) {});

  struct Criterion {
    const char *name;
    std::function<Outcome()> run;
  };
  std::vector<LadderStep> ladder;
  auto ladder_once = [&]() -> const std::vector<LadderStep> & {
    if (ladder.empty()) ladder = sample_ladder(cached_dump(work_dir, "ladder", ladder_dump_spec()));
    return ladder;
  };
  const std::vector<Criterion> criteria{
      {"sandbox exactness", [&] { return fig2_exact(data_dir); }},
      {"Dennis Lyxzen derivation", [&] { return dennis(data_dir); }},
      {"capability matrix", [&] { return capability_matrix(data_dir); }},
      {"ladder counts", [&] { return ladder_counts(data_dir, ladder_dir, ladder_once()); }},
      {"oracle equivalence", [&] { return oracle_equivalence(); }},
      {"scalability budget", [&] { return scalability(work_dir, full_path); }},
      {"determinism", [&] { return determinism(work_dir, data_dir); }},
      {"sampler closedness", [&] { return closedness(ladder_once(), data_dir); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception &e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
