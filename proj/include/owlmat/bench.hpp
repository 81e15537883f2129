#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace owlmat {

enum class ReportFormat { csv, json };
enum class RowStatus { ok, mismatch, timeout, oom, input_error };

std::string_view to_string(RowStatus status);

struct BenchConfig {
  std::vector<std::string> datasets;
  /// Per dataset, covering parse through materialization.
  double timeout_s = 600;
  unsigned threads = 1;
  std::optional<std::string> manifest_path;
  std::optional<std::string> report_path;
  ReportFormat format = ReportFormat::csv;
  bool streaming = false;
  /// Where streamed assertions go; one subdirectory per dataset. Defaults to a
  /// temporary directory that is removed afterwards.
  std::optional<std::string> output_dir;
};

struct BenchRow {
  std::string dataset;
  std::string path;
  std::uint64_t triples = 0;
  std::uint64_t classes = 0;
  std::uint64_t restrictions = 0;
  std::uint64_t instances = 0;
  std::uint64_t inf_types = 0;
  std::uint64_t inf_individuals = 0;
  std::uint64_t inf_literals = 0;
  double t_parse_s = 0;
  double t_tbox_s = 0;
  double t_mat_s = 0;
  double peak_mem_mb = 0;
  RowStatus status = RowStatus::ok;
  std::string error;
};

struct Mismatch {
  std::string dataset;
  std::string column;
  std::uint64_t expected = 0;
  std::uint64_t actual = 0;

  friend bool operator==(const Mismatch &, const Mismatch &) = default;
};

/// dataset name -> column -> expected value. Columns use the report header
/// names (triples, classes, restrictions, instances, inf_types,
/// inf_individuals, inf_literals).
using Manifest = std::map<std::string, std::map<std::string, std::uint64_t>>;

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Manifest load_manifest(const std::string &path);
Manifest parse_manifest(std::string_view json_text);

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> warnings;

  /// 0 ok, 2 manifest mismatch, 3 timeout/oom, 4 input error; the most severe
  /// wins.
  int exit_code() const;
};

/// File name without directory, `.gz` and `.nt`/`.ttl` suffixes.
std::string dataset_name(std::string_view path);

/// One Mismatch per differing cell. Only rows that completed are compared.
/// Datasets absent from the manifest and manifest entries without a row
/// produce warnings.
std::vector<Mismatch> verify_counts(const BenchReport &report, const Manifest &manifest,
                                    std::vector<std::string> *warnings = nullptr);

BenchReport run_benchmark(const BenchConfig &config);

inline constexpr std::string_view kReportCsvHeader =
    "dataset,triples,classes,restrictions,instances,inf_types,inf_individuals,inf_literals,"
    "t_parse_s,t_tbox_s,t_mat_s,peak_mem_mb,status";

void write_report(const BenchReport &report, ReportFormat format, std::ostream &out);

}  // namespace owlmat
