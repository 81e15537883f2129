// owlmat command-line front end. Talks to the library only through owlmat.h.
#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "owlmat/owlmat.h"

namespace {

constexpr int kExitInput = 4;

int fail(owlmat_status status) {
  std::fprintf(stderr, "error: %s: %s\n", owlmat_status_string(status), owlmat_last_error());
  return kExitInput;
}

std::vector<const char *> c_strings(const std::vector<std::string> &v) {
  std::vector<const char *> out;
  for (const auto &s : v) out.push_back(s.c_str());
  return out;
}

struct Handle {
  owlmat_dataset *ds = nullptr;
  ~Handle() { owlmat_dataset_free(ds); }
};

int load(const std::vector<std::string> &inputs, Handle &h) {
  auto paths = c_strings(inputs);
  owlmat_status st = owlmat_dataset_load(paths.data(), paths.size(), &h.ds);
  return st == OWLMAT_OK ? 0 : fail(st);
}

void print_line(const char *line, void *) { std::printf("%s\n", line); }

void print_violation(const char *instance, const char *a, const char *b, size_t pairs, void *) {
  std::printf("violation: %s is both %s and %s (%zu disjoint pairs)\n", instance, a, b, pairs);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Forward-chaining materialization of subclass and owl:hasValue inferences"};
  app.require_subcommand(1);
  app.set_version_flag("--version", owlmat_version());

  std::vector<std::string> inputs;
  unsigned threads = 1;
  bool streaming = false;

  auto *mat = app.add_subcommand("materialize", "Infer type and property assertions");
  std::string out_dir;
  bool dedup = false, consistency = false, print = false;
  mat->add_option("inputs", inputs, "Turtle or N-Triples files, optionally gzipped")->required()->check(CLI::ExistingFile);
  mat->add_option("-o,--output", out_dir, "Directory for inferred_*.nt and stats.json");
  mat->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  mat->add_flag("--streaming", streaming, "Write assertions as produced, keep only counts");
  mat->add_flag("--dedup-against-input", dedup, "Drop inferred property assertions already asserted");
  mat->add_flag("--check-consistency", consistency, "Report disjointness violations");
  mat->add_flag("--print", print, "Print inferred assertions to stdout");

  auto *sample = app.add_subcommand("sample", "Extract a leaf-subtree subset of a dump");
  std::string root, sample_out;
  size_t leaves = 0;
  bool keep_disjointness = false;
  sample->add_option("inputs", inputs, "Dump files")->required()->check(CLI::ExistingFile);
  sample->add_option("--root", root, "Root class IRI")->required();
  sample->add_option("--leaves", leaves, "Number of leaf classes")->required()->check(CLI::PositiveNumber);
  sample->add_flag("--keep-disjointness", keep_disjointness, "Keep owl:disjointWith triples");
  sample->add_option("-o,--output", sample_out, "Output N-Triples file")->required();

  auto *bench = app.add_subcommand("bench", "Run the benchmark over datasets in ascending size");
  double timeout = 600;
  std::string manifest, report, format = "csv";
  bench->add_option("datasets", inputs, "Dataset files")->required();
  bench->add_option("--timeout", timeout, "Per-dataset timeout in seconds")->check(CLI::PositiveNumber);
  bench->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--manifest", manifest, "Expected counts (JSON)");
  bench->add_option("--report", report, "Report output path (default stdout)");
  bench->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  bench->add_flag("--streaming", streaming, "Stream inferred assertions instead of holding them");

  auto *check = app.add_subcommand("check", "Differential and consistency checks");
  bool oracle = false;
  check->add_option("inputs", inputs, "Input files")->required()->check(CLI::ExistingFile);
  check->add_flag("--oracle", oracle, "Compare against the naive fixpoint engine");
  check->add_flag("--consistency", consistency, "Check disjointness");

  auto *stats = app.add_subcommand("stats", "Dataset census");
  stats->add_option("inputs", inputs, "Input files")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*mat) {
    Handle h;
    if (int rc = load(inputs, h)) return rc;
    owlmat_materialize_options o;
    owlmat_materialize_options_init(&o);
    o.threads = threads;
    o.streaming = streaming;
    o.dedup_against_input = dedup;
    o.output_dir = out_dir.empty() ? nullptr : out_dir.c_str();
    if (streaming && !o.output_dir) {
      std::fprintf(stderr, "error: --streaming needs -o\n");
      return kExitInput;
    }
    owlmat_result *r = nullptr;
    if (owlmat_status st = owlmat_materialize(h.ds, &o, &r)) return fail(st);
    owlmat_stats s;
    owlmat_result_stats(r, &s);
    if (print && !streaming) owlmat_result_each(r, print_line, nullptr);
    std::fprintf(print ? stderr : stdout,
                 "n_transitive_types=%llu n_individual_assertions=%llu n_literal_assertions=%llu "
                 "t_load_s=%.3f t_closure_s=%.3f t_materialize_s=%.3f\n",
                 (unsigned long long)s.n_transitive_types, (unsigned long long)s.n_individual_assertions,
                 (unsigned long long)s.n_literal_assertions, s.t_load_s, s.t_closure_s, s.t_materialize_s);
    int rc = 0;
    if (consistency) {
      size_t n = 0;
      if (owlmat_status st = owlmat_check_consistency(h.ds, r, &n, print_violation, nullptr)) rc = fail(st);
      else if (n) rc = 1;
    }
    owlmat_result_free(r);
    return rc;
  }

  if (*sample) {
    auto paths = c_strings(inputs);
    owlmat_sample_options o{root.c_str(), leaves, keep_disjointness};
    owlmat_sample_info info;
    if (owlmat_status st = owlmat_sample(paths.data(), paths.size(), &o, sample_out.c_str(), &info)) return fail(st);
    std::fprintf(stderr, "%zu leaves, %zu triples, %zu closedness issues\n", info.leaves, info.triples,
                 info.closedness_issues);
    return info.closedness_issues ? 1 : 0;
  }

  if (*bench) {
    auto paths = c_strings(inputs);
    owlmat_bench_config c;
    owlmat_bench_config_init(&c);
    c.datasets = paths.data();
    c.n_datasets = paths.size();
    c.timeout_s = timeout;
    c.threads = threads;
    c.manifest_path = manifest.empty() ? nullptr : manifest.c_str();
    c.report_path = report.empty() ? nullptr : report.c_str();
    c.format = format == "json" ? OWLMAT_REPORT_JSON : OWLMAT_REPORT_CSV;
    c.streaming = streaming;
    owlmat_bench_report *rep = nullptr;
    if (owlmat_status st = owlmat_bench_run(&c, &rep)) return fail(st);
    if (report.empty()) owlmat_bench_report_write(rep, c.format, "-");
    for (size_t i = 0; i < owlmat_bench_report_mismatches(rep); ++i) {
      owlmat_mismatch m;
      owlmat_bench_report_mismatch(rep, i, &m);
      std::fprintf(stderr, "mismatch: %s.%s expected %llu, got %llu\n", m.dataset, m.column,
                   (unsigned long long)m.expected, (unsigned long long)m.actual);
    }
    int rc = owlmat_bench_report_exit_code(rep);
    owlmat_bench_report_free(rep);
    return rc;
  }

  if (*check) {
    if (!oracle && !consistency) oracle = true;
    Handle h;
    if (int rc = load(inputs, h)) return rc;
    int rc = 0;
    if (oracle) {
      owlmat_oracle_report rep;
      if (owlmat_status st = owlmat_check_oracle(h.ds, &rep, print_line, nullptr)) return fail(st);
      std::printf("oracle: types=%llu individuals=%llu literals=%llu subclass=%llu\n",
                  (unsigned long long)rep.oracle_types, (unsigned long long)rep.oracle_individuals,
                  (unsigned long long)rep.oracle_literals, (unsigned long long)rep.oracle_subclass);
      std::printf("engine: types=%llu individuals=%llu literals=%llu subclass=%llu\n",
                  (unsigned long long)rep.engine_types, (unsigned long long)rep.engine_individuals,
                  (unsigned long long)rep.engine_literals, (unsigned long long)rep.engine_subclass);
      std::printf("%s\n", rep.agree ? "agree" : "DIFFER");
      if (!rep.agree) rc = 1;
    }
    if (consistency) {
      owlmat_result *r = nullptr;
      if (owlmat_status st = owlmat_materialize(h.ds, nullptr, &r)) return fail(st);
      size_t n = 0;
      owlmat_status st = owlmat_check_consistency(h.ds, r, &n, print_violation, nullptr);
      owlmat_result_free(r);
      if (st) return fail(st);
      std::printf("%zu violations\n", n);
      if (n) rc = 1;
    }
    return rc;
  }

  if (*stats) {
    Handle h;
    if (int rc = load(inputs, h)) return rc;
    owlmat_census c;
    owlmat_dataset_census(h.ds, &c);
    std::printf("triples,classes,restrictions,instances,subclass_edges,direct_types,disjoint_pairs\n");
    std::printf("%llu,%llu,%llu,%llu,%llu,%llu,%llu\n", (unsigned long long)c.triples, (unsigned long long)c.classes,
                (unsigned long long)c.restrictions, (unsigned long long)c.instances,
                (unsigned long long)c.subclass_edges, (unsigned long long)c.direct_types,
                (unsigned long long)c.disjoint_pairs);
    return 0;
  }
  return 0;
}
