/*
 * owlmat: forward-chaining materialization of subclass and owl:hasValue
 * inferences over large OWL ontologies.
 *
 * Plain C interface. Objects are opaque handles created by *_load / *_run
 * functions and released with the matching *_free. Every fallible function
 * returns an owlmat_status; on failure owlmat_last_error() describes the
 * problem for the calling thread until the next call into the library.
 */
#ifndef OWLMAT_H
#define OWLMAT_H

#include <stddef.h>
#include <stdint.h>

#if defined(OWLMAT_BUILDING_LIBRARY)
#define OWLMAT_API __attribute__((visibility("default")))
#else
#define OWLMAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum owlmat_status {
  OWLMAT_OK = 0,
  OWLMAT_E_INVALID_ARGUMENT = 1,
  OWLMAT_E_IO = 2,
  OWLMAT_E_PARSE = 3,
  OWLMAT_E_TBOX = 4,
  OWLMAT_E_ABOX = 5,
  OWLMAT_E_ORACLE_GUARD = 6,
  OWLMAT_E_SAMPLER = 7,
  OWLMAT_E_MANIFEST = 8,
  OWLMAT_E_OUT_OF_MEMORY = 9,
  OWLMAT_E_INTERNAL = 10
} owlmat_status;

typedef enum owlmat_log_level { OWLMAT_LOG_INFO = 0, OWLMAT_LOG_WARNING = 1 } owlmat_log_level;

typedef void (*owlmat_log_fn)(owlmat_log_level level, const char *message, void *user);

OWLMAT_API const char *owlmat_version(void);
OWLMAT_API const char *owlmat_status_string(owlmat_status status);
OWLMAT_API const char *owlmat_last_error(void);

/* Routes library diagnostics; NULL restores the default (warnings to stderr). */
OWLMAT_API void owlmat_set_log_callback(owlmat_log_fn fn, void *user);

/* ---- datasets ---------------------------------------------------------- */

typedef struct owlmat_dataset owlmat_dataset;

typedef struct owlmat_census {
  uint64_t triples;
  uint64_t classes;
  uint64_t restrictions;
  uint64_t instances;
  uint64_t subclass_edges;
  uint64_t direct_types;
  uint64_t disjoint_pairs;
  double t_parse_s;
  double t_tbox_s;
} owlmat_census;

/* Parses Turtle / N-Triples files (gzip allowed) and indexes them. */
OWLMAT_API owlmat_status owlmat_dataset_load(const char *const *paths, size_t n_paths, owlmat_dataset **out);
/* Same, from an in-memory Turtle document. */
OWLMAT_API owlmat_status owlmat_dataset_load_string(const char *text, size_t length, owlmat_dataset **out);
OWLMAT_API void owlmat_dataset_free(owlmat_dataset *dataset);
OWLMAT_API owlmat_status owlmat_dataset_census(const owlmat_dataset *dataset, owlmat_census *out);

/* Superclass closure of a class, each IRI passed to the callback in id order.
 * Fails with OWLMAT_E_INVALID_ARGUMENT for IRIs that are not named classes. */
typedef void (*owlmat_term_fn)(const char *term, void *user);
OWLMAT_API owlmat_status owlmat_dataset_closure(const owlmat_dataset *dataset, const char *class_iri,
                                                owlmat_term_fn fn, void *user);

/* ---- materialization --------------------------------------------------- */

typedef struct owlmat_result owlmat_result;

typedef struct owlmat_materialize_options {
  uint32_t threads;            /* >= 1 */
  int streaming;               /* write as produced, keep only counts */
  int dedup_against_input;     /* drop property assertions present in the input */
  const char *output_dir;      /* NULL: keep in memory; required when streaming */
} owlmat_materialize_options;

typedef struct owlmat_stats {
  uint64_t n_transitive_types;
  uint64_t n_individual_assertions;
  uint64_t n_literal_assertions;
  double t_load_s;
  double t_closure_s;
  double t_materialize_s;
} owlmat_stats;

OWLMAT_API void owlmat_materialize_options_init(owlmat_materialize_options *options);
OWLMAT_API owlmat_status owlmat_materialize(const owlmat_dataset *dataset, const owlmat_materialize_options *options,
                                            owlmat_result **out);
OWLMAT_API void owlmat_result_free(owlmat_result *result);
OWLMAT_API owlmat_status owlmat_result_stats(const owlmat_result *result, owlmat_stats *out);
/* Writes inferred_types.nt, inferred_relations.nt and inferred_literals.nt
 * (sorted N-Triples). Fails for streamed results. */
OWLMAT_API owlmat_status owlmat_result_write(const owlmat_result *result, const char *output_dir);
OWLMAT_API owlmat_status owlmat_result_write_stats(const owlmat_result *result, const char *path);

/* Inferred assertions as N-Triples lines without the trailing newline.
 * Fails for streamed results. */
typedef void (*owlmat_line_fn)(const char *line, void *user);
OWLMAT_API owlmat_status owlmat_result_each(const owlmat_result *result, owlmat_line_fn fn, void *user);

/* ---- consistency ------------------------------------------------------- */

typedef void (*owlmat_violation_fn)(const char *instance, const char *class_a, const char *class_b,
                                    size_t violated_pairs, void *user);

/* Checks the dataset's disjointness axioms, propagated to subclasses, against
 * all asserted and inferred types. */
OWLMAT_API owlmat_status owlmat_check_consistency(const owlmat_dataset *dataset, const owlmat_result *result,
                                                  size_t *n_violations, owlmat_violation_fn fn, void *user);
/* Number of disjoint pairs after propagation to subclasses. */
OWLMAT_API owlmat_status owlmat_propagated_disjointness(const owlmat_dataset *dataset, size_t *n_pairs);

/* ---- oracle differential ----------------------------------------------- */

typedef struct owlmat_oracle_report {
  int agree;  /* 1 when all compared sets are equal */
  uint64_t oracle_types, oracle_individuals, oracle_literals, oracle_subclass;
  uint64_t engine_types, engine_individuals, engine_literals, engine_subclass;
  uint64_t differences;
} owlmat_oracle_report;

/* Runs the naive fixpoint engine (inputs up to 100,000 triples) and the
 * materializer and compares their outputs. Each difference is passed to `fn`
 * prefixed with "oracle-only: " or "engine-only: ". */
OWLMAT_API owlmat_status owlmat_check_oracle(const owlmat_dataset *dataset, owlmat_oracle_report *out,
                                             owlmat_line_fn fn, void *user);

/* ---- sampler ----------------------------------------------------------- */

typedef struct owlmat_sample_options {
  const char *root_iri;
  size_t leaf_limit;        /* >= 1 */
  int keep_disjointness;
} owlmat_sample_options;

typedef struct owlmat_sample_info {
  size_t leaves;
  size_t triples;
  size_t closedness_issues;
} owlmat_sample_info;

/* Extracts a leaf-subtree sample from the dump and writes it as sorted
 * N-Triples to out_path. */
OWLMAT_API owlmat_status owlmat_sample(const char *const *dump_paths, size_t n_paths,
                                       const owlmat_sample_options *options, const char *out_path,
                                       owlmat_sample_info *info);

/* ---- benchmark --------------------------------------------------------- */

typedef enum owlmat_report_format { OWLMAT_REPORT_CSV = 0, OWLMAT_REPORT_JSON = 1 } owlmat_report_format;

typedef struct owlmat_bench_config {
  const char *const *datasets;
  size_t n_datasets;
  double timeout_s;           /* > 0 */
  uint32_t threads;           /* >= 1 */
  const char *manifest_path;  /* optional */
  const char *report_path;    /* optional */
  owlmat_report_format format;
  int streaming;
} owlmat_bench_config;

typedef struct owlmat_bench_row {
  const char *dataset;
  uint64_t triples, classes, restrictions, instances;
  uint64_t inf_types, inf_individuals, inf_literals;
  double t_parse_s, t_tbox_s, t_mat_s, peak_mem_mb;
  const char *status; /* ok | mismatch | timeout | oom | input_error */
  const char *error;  /* empty when ok */
} owlmat_bench_row;

typedef struct owlmat_mismatch {
  const char *dataset;
  const char *column;
  uint64_t expected;
  uint64_t actual;
} owlmat_mismatch;

typedef struct owlmat_bench_report owlmat_bench_report;

OWLMAT_API void owlmat_bench_config_init(owlmat_bench_config *config);
OWLMAT_API owlmat_status owlmat_bench_run(const owlmat_bench_config *config, owlmat_bench_report **out);
OWLMAT_API void owlmat_bench_report_free(owlmat_bench_report *report);
OWLMAT_API size_t owlmat_bench_report_rows(const owlmat_bench_report *report);
/* Strings stay valid until the report is freed. */
OWLMAT_API owlmat_status owlmat_bench_report_row(const owlmat_bench_report *report, size_t index,
                                                 owlmat_bench_row *out);
OWLMAT_API size_t owlmat_bench_report_mismatches(const owlmat_bench_report *report);
OWLMAT_API owlmat_status owlmat_bench_report_mismatch(const owlmat_bench_report *report, size_t index,
                                                      owlmat_mismatch *out);
/* 0 ok, 2 manifest mismatch, 3 timeout/oom, 4 input error. */
OWLMAT_API int owlmat_bench_report_exit_code(const owlmat_bench_report *report);
/* path "-" writes to standard output. */
OWLMAT_API owlmat_status owlmat_bench_report_write(const owlmat_bench_report *report, owlmat_report_format format,
                                                   const char *path);

#ifdef __cplusplus
}
#endif

#endif /* OWLMAT_H */
