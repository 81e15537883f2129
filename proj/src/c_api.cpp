#include "owlmat/owlmat.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <string>
#include <vector>

#include "owlmat/bench.hpp"
#include "owlmat/log.hpp"
#include "owlmat/oracle.hpp"
#include "owlmat/pipeline.hpp"
#include "owlmat/sampler.hpp"

struct owlmat_dataset {
  owlmat::Dataset ds;
};

// A result refers to the dataset it was computed from; the dataset must
// outlive it.
struct owlmat_result {
  const owlmat_dataset *dataset;
  owlmat::InferenceResult result;
};

struct owlmat_bench_report {
  owlmat::BenchReport report;
};

namespace {

thread_local std::string g_last_error;

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <typename F>
owlmat_status guarded(F &&body) {
  g_last_error.clear();
  try {
    body();
    return OWLMAT_OK;
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return OWLMAT_E_OUT_OF_MEMORY;
  } catch (const owlmat::ParseError &e) {
    g_last_error = e.what();
    return OWLMAT_E_PARSE;
  } catch (const owlmat::IoError &e) {
    g_last_error = e.what();
    return OWLMAT_E_IO;
  } catch (const std::filesystem::filesystem_error &e) {
    g_last_error = e.what();
    return OWLMAT_E_IO;
  } catch (const owlmat::TermError &e) {
    g_last_error = e.what();
    return OWLMAT_E_PARSE;
  } catch (const owlmat::TBoxError &e) {
    g_last_error = e.what();
    return OWLMAT_E_TBOX;
  } catch (const owlmat::ABoxError &e) {
    g_last_error = e.what();
    return OWLMAT_E_ABOX;
  } catch (const owlmat::OracleGuardError &e) {
    g_last_error = e.what();
    return OWLMAT_E_ORACLE_GUARD;
  } catch (const owlmat::SamplerError &e) {
    g_last_error = e.what();
    return OWLMAT_E_SAMPLER;
  } catch (const owlmat::ManifestError &e) {
    g_last_error = e.what();
    return OWLMAT_E_MANIFEST;
  } catch (const std::invalid_argument &e) {
    g_last_error = e.what();
    return OWLMAT_E_INVALID_ARGUMENT;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return OWLMAT_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OWLMAT_E_INTERNAL;
  }
}

void require(bool ok, const char *what) {
  if (!ok) throw InvalidArgument(what);
}

std::string render(const owlmat::TermStore &store, owlmat::TermId id) {
  const owlmat::Term &t = store.resolve(id);
  return t.is_blank() ? "_:" + t.value : t.value;
}

std::string line_of(const owlmat::TermStore &store, const owlmat::Triple &t) {
  std::string s = owlmat::to_ntriples(std::span<const owlmat::Triple>(&t, 1), store);
  s.pop_back();
  return s;
}

std::vector<std::string> path_list(const char *const *paths, size_t n) {
  require(paths != nullptr || n == 0, "paths is NULL");
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) {
    require(paths[i] != nullptr, "NULL path");
    out.emplace_back(paths[i]);
  }
  return out;
}

}  // namespace

extern "C" {

const char *owlmat_version(void) { return "0.1.0"; }

const char *owlmat_status_string(owlmat_status status) {
  switch (status) {
    case OWLMAT_OK: return "ok";
    case OWLMAT_E_INVALID_ARGUMENT: return "invalid argument";
    case OWLMAT_E_IO: return "I/O error";
    case OWLMAT_E_PARSE: return "parse error";
    case OWLMAT_E_TBOX: return "terminology error";
    case OWLMAT_E_ABOX: return "assertion error";
    case OWLMAT_E_ORACLE_GUARD: return "input too large for the oracle";
    case OWLMAT_E_SAMPLER: return "sampler error";
    case OWLMAT_E_MANIFEST: return "manifest error";
    case OWLMAT_E_OUT_OF_MEMORY: return "out of memory";
    case OWLMAT_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char *owlmat_last_error(void) { return g_last_error.c_str(); }

void owlmat_set_log_callback(owlmat_log_fn fn, void *user) {
  if (!fn) {
    owlmat::set_log_handler(nullptr);
    return;
  }
  owlmat::set_log_handler([fn, user](owlmat::LogLevel level, std::string_view message) {
    std::string m(message);
    fn(level == owlmat::LogLevel::warning ? OWLMAT_LOG_WARNING : OWLMAT_LOG_INFO, m.c_str(), user);
  });
}

// ---- datasets

owlmat_status owlmat_dataset_load(const char *const *paths, size_t n_paths, owlmat_dataset **out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = nullptr;
    auto list = path_list(paths, n_paths);
    auto handle = std::make_unique<owlmat_dataset>(owlmat_dataset{owlmat::load_dataset(list)});
    *out = handle.release();
  });
}

owlmat_status owlmat_dataset_load_string(const char *text, size_t length, owlmat_dataset **out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(text != nullptr || length == 0, "text is NULL");
    *out = nullptr;
    auto handle =
        std::make_unique<owlmat_dataset>(owlmat_dataset{owlmat::load_dataset_from_string({text, length})});
    *out = handle.release();
  });
}

void owlmat_dataset_free(owlmat_dataset *dataset) { delete dataset; }

owlmat_status owlmat_dataset_census(const owlmat_dataset *dataset, owlmat_census *out) {
  return guarded([&] {
    require(dataset && out, "NULL argument");
    owlmat::Census c = owlmat::census(dataset->ds);
    *out = {c.triples,       c.classes,        c.restrictions,          c.instances, c.subclass_edges,
            c.direct_types,  c.disjoint_pairs, dataset->ds.t_parse_s, dataset->ds.t_tbox_s + dataset->ds.t_abox_s};
  });
}

owlmat_status owlmat_dataset_closure(const owlmat_dataset *dataset, const char *class_iri, owlmat_term_fn fn,
                                     void *user) {
  return guarded([&] {
    require(dataset && class_iri && fn, "NULL argument");
    const auto &ds = dataset->ds;
    owlmat::TermId c = ds.store->find_iri(class_iri);
    require(ds.tbox.is_named_class(c), ("not a named class: " + std::string(class_iri)).c_str());
    for (owlmat::TermId d : ds.tbox.superclass_closure(c)) fn(render(*ds.store, d).c_str(), user);
  });
}

// ---- materialization

void owlmat_materialize_options_init(owlmat_materialize_options *options) {
  if (options) *options = {1, 0, 0, nullptr};
}

owlmat_status owlmat_materialize(const owlmat_dataset *dataset, const owlmat_materialize_options *options,
                                 owlmat_result **out) {
  return guarded([&] {
    require(dataset && out, "NULL argument");
    *out = nullptr;
    owlmat_materialize_options defaults;
    owlmat_materialize_options_init(&defaults);
    const owlmat_materialize_options &o = options ? *options : defaults;
    require(o.threads >= 1, "threads must be at least 1");
    require(!o.streaming || o.output_dir, "streaming needs output_dir");
    owlmat::RunOptions ro;
    ro.threads = o.threads;
    ro.streaming = o.streaming != 0;
    ro.dedup_against_input = o.dedup_against_input != 0;
    if (o.output_dir) ro.output_dir = o.output_dir;
    auto handle = std::make_unique<owlmat_result>(owlmat_result{dataset, owlmat::run_materialization(dataset->ds, ro)});
    if (o.output_dir) {
      std::ofstream stats(std::filesystem::path(o.output_dir) / owlmat::kStatsFile);
      owlmat::write_stats_json(owlmat::count_stats(handle->result), stats);
    }
    *out = handle.release();
  });
}

void owlmat_result_free(owlmat_result *result) { delete result; }

owlmat_status owlmat_result_stats(const owlmat_result *result, owlmat_stats *out) {
  return guarded([&] {
    require(result && out, "NULL argument");
    owlmat::MaterializationStats s = owlmat::count_stats(result->result);
    *out = {s.n_transitive_types, s.n_individual_assertions, s.n_literal_assertions,
            s.t_load_s,           s.t_closure_s,             s.t_materialize_s};
  });
}

owlmat_status owlmat_result_write(const owlmat_result *result, const char *output_dir) {
  return guarded([&] {
    require(result && output_dir, "NULL argument");
    require(!result->result.streamed, "streamed results have no retained assertions");
    std::filesystem::path dir(output_dir);
    std::filesystem::create_directories(dir);
    std::ofstream types(dir / owlmat::kTypesFile, std::ios::binary);
    std::ofstream relations(dir / owlmat::kRelationsFile, std::ios::binary);
    std::ofstream literals(dir / owlmat::kLiteralsFile, std::ios::binary);
    if (!types || !relations || !literals) throw owlmat::IoError(std::string("cannot write to ") + output_dir);
    const auto &ds = result->dataset->ds;
    owlmat::write_inferences(result->result, *ds.store, ds.vocab.rdf_type, types, relations, literals);
  });
}

owlmat_status owlmat_result_write_stats(const owlmat_result *result, const char *path) {
  return guarded([&] {
    require(result && path, "NULL argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw owlmat::IoError(std::string("cannot write ") + path);
    owlmat::write_stats_json(owlmat::count_stats(result->result), out);
  });
}

owlmat_status owlmat_result_each(const owlmat_result *result, owlmat_line_fn fn, void *user) {
  return guarded([&] {
    require(result && fn, "NULL argument");
    require(!result->result.streamed, "streamed results have no retained assertions");
    const auto &ds = result->dataset->ds;
    const auto &r = result->result;
    for (const auto &a : r.types) fn(line_of(*ds.store, {a.instance, ds.vocab.rdf_type, a.cls}).c_str(), user);
    for (const auto &a : r.object_assertions)
      fn(line_of(*ds.store, {a.instance, a.property, a.value}).c_str(), user);
    for (const auto &a : r.data_assertions) fn(line_of(*ds.store, {a.instance, a.property, a.value}).c_str(), user);
  });
}

// ---- consistency

owlmat_status owlmat_check_consistency(const owlmat_dataset *dataset, const owlmat_result *result,
                                       size_t *n_violations, owlmat_violation_fn fn, void *user) {
  return guarded([&] {
    require(dataset && result && n_violations, "NULL argument");
    require(result->dataset == dataset, "result belongs to a different dataset");
    const auto &ds = dataset->ds;
    auto pairs = ds.tbox.propagate_disjointness();
    auto violations = owlmat::check_consistency(ds.abox, result->result, pairs, ds.tbox);
    *n_violations = violations.size();
    if (!fn) return;
    for (const auto &v : violations)
      fn(render(*ds.store, v.instance).c_str(), render(*ds.store, v.class_a).c_str(),
         render(*ds.store, v.class_b).c_str(), v.violated_pairs, user);
  });
}

owlmat_status owlmat_propagated_disjointness(const owlmat_dataset *dataset, size_t *n_pairs) {
  return guarded([&] {
    require(dataset && n_pairs, "NULL argument");
    *n_pairs = dataset->ds.tbox.propagate_disjointness().size();
  });
}

// ---- oracle

owlmat_status owlmat_check_oracle(const owlmat_dataset *dataset, owlmat_oracle_report *out, owlmat_line_fn fn,
                                  void *user) {
  return guarded([&] {
    require(dataset && out, "NULL argument");
    owlmat::OracleComparison cmp = owlmat::compare_with_oracle(dataset->ds);
    out->agree = cmp.agree() ? 1 : 0;
    out->oracle_types = cmp.oracle.types.size();
    out->oracle_individuals = cmp.oracle.object_assertions.size();
    out->oracle_literals = cmp.oracle.data_assertions.size();
    out->oracle_subclass = cmp.oracle.subclass.size();
    out->engine_types = cmp.engine.types.size();
    out->engine_individuals = cmp.engine.object_assertions.size();
    out->engine_literals = cmp.engine.data_assertions.size();
    out->engine_subclass = cmp.engine_subclass.size();
    out->differences = cmp.oracle_only.size() + cmp.engine_only.size();
    if (!fn) return;
    for (const auto &l : cmp.oracle_only) fn(("oracle-only: " + l).c_str(), user);
    for (const auto &l : cmp.engine_only) fn(("engine-only: " + l).c_str(), user);
  });
}

// ---- sampler

owlmat_status owlmat_sample(const char *const *dump_paths, size_t n_paths, const owlmat_sample_options *options,
                            const char *out_path, owlmat_sample_info *info) {
  return guarded([&] {
    require(options && options->root_iri && out_path, "NULL argument");
    require(options->leaf_limit >= 1, "leaf_limit must be at least 1");
    auto list = path_list(dump_paths, n_paths);
    owlmat::Sample sample =
        owlmat::sample_files(list, options->root_iri, options->leaf_limit, options->keep_disjointness != 0);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw owlmat::IoError(std::string("cannot write ") + out_path);
    owlmat::NTriplesWriter(out, *sample.store).write(sample.triples);
    out.flush();
    if (!out) throw owlmat::IoError(std::string("write failure on ") + out_path);
    for (const auto &issue : sample.closedness_issues) owlmat::warn("closedness: " + issue);
    if (info) *info = {sample.leaves.size(), sample.triples.size(), sample.closedness_issues.size()};
  });
}

// ---- benchmark

void owlmat_bench_config_init(owlmat_bench_config *config) {
  if (config) *config = {nullptr, 0, 600.0, 1, nullptr, nullptr, OWLMAT_REPORT_CSV, 0};
}

owlmat_status owlmat_bench_run(const owlmat_bench_config *config, owlmat_bench_report **out) {
  return guarded([&] {
    require(config && out, "NULL argument");
    *out = nullptr;
    require(config->timeout_s > 0, "timeout must be positive");
    require(config->threads >= 1, "threads must be at least 1");
    owlmat::BenchConfig bc;
    bc.datasets = path_list(config->datasets, config->n_datasets);
    bc.timeout_s = config->timeout_s;
    bc.threads = config->threads;
    if (config->manifest_path) bc.manifest_path = config->manifest_path;
    if (config->report_path) bc.report_path = config->report_path;
    bc.format = config->format == OWLMAT_REPORT_JSON ? owlmat::ReportFormat::json : owlmat::ReportFormat::csv;
    bc.streaming = config->streaming != 0;
    auto handle = std::make_unique<owlmat_bench_report>(owlmat_bench_report{owlmat::run_benchmark(bc)});
    *out = handle.release();
  });
}

void owlmat_bench_report_free(owlmat_bench_report *report) { delete report; }

size_t owlmat_bench_report_rows(const owlmat_bench_report *report) { return report ? report->report.rows.size() : 0; }

owlmat_status owlmat_bench_report_row(const owlmat_bench_report *report, size_t index, owlmat_bench_row *out) {
  return guarded([&] {
    require(report && out, "NULL argument");
    require(index < report->report.rows.size(), "row index out of range");
    const owlmat::BenchRow &r = report->report.rows[index];
    *out = {r.dataset.c_str(), r.triples,  r.classes, r.restrictions, r.instances,
            r.inf_types,       r.inf_individuals, r.inf_literals, r.t_parse_s, r.t_tbox_s,
            r.t_mat_s,         r.peak_mem_mb,     owlmat::to_string(r.status).data(), r.error.c_str()};
  });
}

size_t owlmat_bench_report_mismatches(const owlmat_bench_report *report) {
  return report ? report->report.mismatches.size() : 0;
}

owlmat_status owlmat_bench_report_mismatch(const owlmat_bench_report *report, size_t index, owlmat_mismatch *out) {
  return guarded([&] {
    require(report && out, "NULL argument");
    require(index < report->report.mismatches.size(), "mismatch index out of range");
    const owlmat::Mismatch &m = report->report.mismatches[index];
    *out = {m.dataset.c_str(), m.column.c_str(), m.expected, m.actual};
  });
}

int owlmat_bench_report_exit_code(const owlmat_bench_report *report) {
  return report ? report->report.exit_code() : 4;
}

owlmat_status owlmat_bench_report_write(const owlmat_bench_report *report, owlmat_report_format format,
                                        const char *path) {
  return guarded([&] {
    require(report && path, "NULL argument");
    auto fmt = format == OWLMAT_REPORT_JSON ? owlmat::ReportFormat::json : owlmat::ReportFormat::csv;
    if (std::string_view(path) == "-") {
      owlmat::write_report(report->report, fmt, std::cout);
      std::cout.flush();
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw owlmat::IoError(std::string("cannot write ") + path);
    owlmat::write_report(report->report, fmt, out);
  });
}

}  // extern "C"
