#include "owlmat/bench.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <new>
#include <ostream>
#include <sstream>

#include "owlmat/log.hpp"
#include "owlmat/pipeline.hpp"

namespace owlmat {

namespace fs = std::filesystem;

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::ok: return "ok";
    case RowStatus::mismatch: return "mismatch";
    case RowStatus::timeout: return "timeout";
    case RowStatus::oom: return "oom";
    case RowStatus::input_error: return "input_error";
  }
  return "unknown";
}

std::string dataset_name(std::string_view path) {
  std::string name = fs::path(path).filename().string();
  for (std::string_view suffix : {".gz", ".nt", ".ttl"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix)) name.resize(name.size() - suffix.size());
  }
  return name;
}

Manifest parse_manifest(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("datasets") || !j["datasets"].is_object())
    throw ManifestError("manifest needs a \"datasets\" object");
  Manifest m;
  for (const auto &[name, row] : j["datasets"].items()) {
    if (!row.is_object()) throw ManifestError("manifest row " + name + " is not an object");
    for (const auto &[column, value] : row.items()) {
      if (!value.is_number_unsigned()) throw ManifestError("manifest cell " + name + "." + column + " is not a count");
      m[name][column] = value.get<std::uint64_t>();
    }
  }
  return m;
}

Manifest load_manifest(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot read manifest " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

int BenchReport::exit_code() const {
  int code = 0;
  for (const BenchRow &r : rows) {
    switch (r.status) {
      case RowStatus::input_error: code = std::max(code, 4); break;
      case RowStatus::timeout:
      case RowStatus::oom: code = std::max(code, 3); break;
      case RowStatus::mismatch: code = std::max(code, 2); break;
      case RowStatus::ok: break;
    }
  }
  if (!mismatches.empty()) code = std::max(code, 2);
  return code;
}

namespace {

std::optional<std::uint64_t> column_value(const BenchRow &r, std::string_view column) {
  if (column == "triples") return r.triples;
  if (column == "classes") return r.classes;
  if (column == "restrictions") return r.restrictions;
  if (column == "instances") return r.instances;
  if (column == "inf_types") return r.inf_types;
  if (column == "inf_individuals") return r.inf_individuals;
  if (column == "inf_literals") return r.inf_literals;
  return std::nullopt;
}

struct Timeout {};

}  // namespace

std::vector<Mismatch> verify_counts(const BenchReport &report, const Manifest &manifest,
                                    std::vector<std::string> *warnings) {
  std::vector<Mismatch> out;
  auto note = [&](std::string w) {
    if (warnings) warnings->push_back(w);
    warn(w);
  };
  for (const BenchRow &r : report.rows) {
    if (r.status != RowStatus::ok && r.status != RowStatus::mismatch) continue;
    auto it = manifest.find(r.dataset);
    if (it == manifest.end()) {
      note("dataset " + r.dataset + " is not in the manifest");
      continue;
    }
    for (const auto &[column, expected] : it->second) {
      auto actual = column_value(r, column);
      if (!actual) {
        note("manifest column " + column + " is unknown");
        continue;
      }
      if (*actual != expected) out.push_back({r.dataset, column, expected, *actual});
    }
  }
  for (const auto &[name, cells] : manifest) {
    bool present = std::any_of(report.rows.begin(), report.rows.end(),
                               [&](const BenchRow &r) { return r.dataset == name; });
    if (!present) note("manifest lists " + name + ", which was not run");
  }
  return out;
}

BenchReport run_benchmark(const BenchConfig &config) {
  if (!(config.timeout_s > 0)) throw std::invalid_argument("timeout must be positive");
  if (config.threads < 1) throw std::invalid_argument("threads must be at least 1");

  std::optional<Manifest> manifest;
  if (config.manifest_path) manifest = load_manifest(*config.manifest_path);

  // Ascending size; unreadable files keep their place at the front.
  std::vector<std::pair<std::uintmax_t, std::string>> order;
  for (const std::string &p : config.datasets) {
    std::error_code ec;
    std::uintmax_t size = fs::file_size(p, ec);
    order.emplace_back(ec ? 0 : size, p);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto &a, const auto &b) { return a.first < b.first; });

  fs::path stream_root;
  bool temporary_root = false;
  if (config.streaming) {
    if (config.output_dir) {
      stream_root = *config.output_dir;
    } else {
      stream_root = fs::temp_directory_path() / ("owlmat-bench-" + std::to_string(::getpid()));
      temporary_root = true;
    }
  }

  BenchReport report;
  for (const auto &[size, path] : order) {
    BenchRow row;
    row.dataset = dataset_name(path);
    row.path = path;
    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(config.timeout_s));
    auto check = [deadline] {
      if (Clock::now() > deadline) throw Timeout{};
    };
    try {
      const std::string paths[] = {path};
      Dataset ds = load_dataset(paths, {check});
      Census c = census(ds);
      row.triples = c.triples;
      row.classes = c.classes;
      row.restrictions = c.restrictions;
      row.instances = c.instances;
      row.t_parse_s = ds.t_parse_s;
      row.t_tbox_s = ds.t_tbox_s + ds.t_abox_s;

      RunOptions ro;
      ro.threads = config.threads;
      ro.streaming = config.streaming;
      ro.check_cancel = check;
      if (config.streaming) ro.output_dir = stream_root / row.dataset;
      InferenceResult result = run_materialization(ds, ro);
      MaterializationStats s = count_stats(result);
      row.inf_types = s.n_transitive_types;
      row.inf_individuals = s.n_individual_assertions;
      row.inf_literals = s.n_literal_assertions;
      row.t_mat_s = s.t_materialize_s;
    } catch (const Timeout &) {
      row.status = RowStatus::timeout;
      row.error = "exceeded " + std::to_string(config.timeout_s) + " s";
    } catch (const std::bad_alloc &) {
      row.status = RowStatus::oom;
      row.error = "out of memory";
    } catch (const std::exception &e) {
      row.status = RowStatus::input_error;
      row.error = e.what();
    }
    row.peak_mem_mb = peak_memory_mb();
    if (row.status != RowStatus::ok) warn(row.dataset + ": " + std::string(to_string(row.status)) + ": " + row.error);
    report.rows.push_back(std::move(row));
  }
  if (temporary_root) {
    std::error_code ec;
    fs::remove_all(stream_root, ec);
  }

  if (manifest) {
    report.mismatches = verify_counts(report, *manifest, &report.warnings);
    for (const Mismatch &m : report.mismatches)
      for (BenchRow &r : report.rows)
        if (r.dataset == m.dataset && r.status == RowStatus::ok) r.status = RowStatus::mismatch;
  }

  if (config.report_path) {
    std::ofstream out(*config.report_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report " + *config.report_path);
    write_report(report, config.format, out);
  }
  return report;
}

void write_report(const BenchReport &report, ReportFormat format, std::ostream &out) {
  if (format == ReportFormat::csv) {
    out << kReportCsvHeader << '\n';
    for (const BenchRow &r : report.rows) {
      out << r.dataset << ',' << r.triples << ',' << r.classes << ',' << r.restrictions << ',' << r.instances << ','
          << r.inf_types << ',' << r.inf_individuals << ',' << r.inf_literals << ',' << std::fixed
          << std::setprecision(3) << r.t_parse_s << ',' << r.t_tbox_s << ',' << r.t_mat_s << ','
          << std::setprecision(1) << r.peak_mem_mb << ',' << to_string(r.status) << '\n';
      out.unsetf(std::ios::floatfield);
    }
    return;
  }
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const BenchRow &r : report.rows) {
    nlohmann::ordered_json row;
    row["dataset"] = r.dataset;
    row["path"] = r.path;
    row["triples"] = r.triples;
    row["classes"] = r.classes;
    row["restrictions"] = r.restrictions;
    row["instances"] = r.instances;
    row["inf_types"] = r.inf_types;
    row["inf_individuals"] = r.inf_individuals;
    row["inf_literals"] = r.inf_literals;
    row["t_parse_s"] = r.t_parse_s;
    row["t_tbox_s"] = r.t_tbox_s;
    row["t_mat_s"] = r.t_mat_s;
    row["peak_mem_mb"] = r.peak_mem_mb;
    row["status"] = to_string(r.status);
    if (!r.error.empty()) row["error"] = r.error;
    j["rows"].push_back(std::move(row));
  }
  j["mismatches"] = nlohmann::ordered_json::array();
  for (const Mismatch &m : report.mismatches)
    j["mismatches"].push_back(
        {{"dataset", m.dataset}, {"column", m.column}, {"expected", m.expected}, {"actual", m.actual}});
  j["exit_code"] = report.exit_code();
  out << j.dump(2) << '\n';
}

}  // namespace owlmat
