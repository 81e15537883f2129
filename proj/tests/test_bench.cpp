#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "fixtures.hpp"
#include "owlmat/bench.hpp"
#include "synth.hpp"

using namespace owlmat;

namespace {

namespace fs = std::filesystem;

class Bench : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("owlmat_bench_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string &name, const std::string &text) {
    auto p = (dir_ / name).string();
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

  std::string dump(const std::string &name, std::size_t classes, std::size_t instances) {
    auto p = (dir_ / name).string();
    std::ofstream out(p, std::ios::binary);
    synth::DumpSpec spec;
    spec.classes = classes;
    spec.instances = instances;
    spec.restrictions = classes / 10;
    synth::write_dump(out, spec);
    return p;
  }

  fs::path dir_;
  fixtures::QuietLog quiet_;
};

BenchRow row(const std::string &name, std::uint64_t types, std::uint64_t individuals, std::uint64_t literals) {
  BenchRow r;
  r.dataset = name;
  r.inf_types = types;
  r.inf_individuals = individuals;
  r.inf_literals = literals;
  return r;
}

TEST(VerifyCounts, MatchingReportHasNoMismatches) {
  BenchReport report;
  report.rows.push_back(row("clg_10e2", 425, 20, 1));
  Manifest m{{"clg_10e2", {{"inf_types", 425}, {"inf_individuals", 20}, {"inf_literals", 1}}}};
  EXPECT_TRUE(verify_counts(report, m).empty());
}

TEST(VerifyCounts, OffByOne) {
  BenchReport report;
  report.rows.push_back(row("clg_10e2", 424, 20, 1));
  Manifest m{{"clg_10e2", {{"inf_types", 425}, {"inf_individuals", 20}, {"inf_literals", 1}}}};
  auto mm = verify_counts(report, m);
  ASSERT_EQ(mm.size(), 1u);
  EXPECT_EQ(mm[0], (Mismatch{"clg_10e2", "inf_types", 425, 424}));
}

TEST(VerifyCounts, ExtraAndMissingDatasetsWarnOnly) {
  BenchReport report;
  report.rows.push_back(row("clg_10", 10, 1, 1));
  report.rows.push_back(row("unlisted", 1, 1, 1));
  Manifest m{{"clg_10", {{"inf_types", 10}}}, {"clg_10e5", {{"inf_types", 42820}}}};
  std::vector<std::string> warnings;
  EXPECT_TRUE(verify_counts(report, m, &warnings).empty());
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(VerifyCounts, FailedRowsAreNotCompared) {
  BenchReport report;
  report.rows.push_back(row("clg_10", 0, 0, 0));
  report.rows.back().status = RowStatus::timeout;
  Manifest m{{"clg_10", {{"inf_types", 10}}}};
  EXPECT_TRUE(verify_counts(report, m).empty());
}

TEST(Manifest, ShippedManifest) {
  Manifest m = load_manifest(fixtures::data("caligraph_manifest.json"));
  ASSERT_EQ(m.size(), 6u);
  EXPECT_EQ(m["clg_10"]["inf_types"], 10u);
  EXPECT_EQ(m["clg_10e2"]["inf_types"], 425u);
  EXPECT_EQ(m["clg_10e3"]["inf_literals"], 5706u);
  EXPECT_EQ(m["clg_10e4"]["inf_individuals"], 12085u);
  EXPECT_EQ(m["clg_10e5"]["triples"], 4641400u);
  EXPECT_EQ(m["clg_full"]["inf_types"], 138713499u);
}

TEST(Manifest, Errors) {
  EXPECT_THROW(parse_manifest("not json"), ManifestError);
  EXPECT_THROW(parse_manifest("{}"), ManifestError);
  EXPECT_THROW(parse_manifest(R"({"datasets": {"a": {"inf_types": -1}}})"), ManifestError);
  EXPECT_THROW(parse_manifest(R"({"datasets": {"a": 3}})"), ManifestError);
  EXPECT_THROW(load_manifest("/nonexistent.json"), ManifestError);
}

TEST(DatasetName, StripsSuffixes) {
  EXPECT_EQ(dataset_name("/x/clg_10.ttl"), "clg_10");
  EXPECT_EQ(dataset_name("clg_10e5.nt.gz"), "clg_10e5");
  EXPECT_EQ(dataset_name("a/b/clg_full.ttl.gz"), "clg_full");
}

TEST(ExitCode, MostSevereWins) {
  BenchReport r;
  EXPECT_EQ(r.exit_code(), 0);
  r.rows.push_back(row("a", 0, 0, 0));
  r.rows.back().status = RowStatus::mismatch;
  EXPECT_EQ(r.exit_code(), 2);
  r.rows.push_back(row("b", 0, 0, 0));
  r.rows.back().status = RowStatus::oom;
  EXPECT_EQ(r.exit_code(), 3);
  r.rows.push_back(row("c", 0, 0, 0));
  r.rows.back().status = RowStatus::input_error;
  EXPECT_EQ(r.exit_code(), 4);
}

TEST_F(Bench, Clg10AloneWithManifest) {
  BenchConfig c;
  c.datasets = {fixtures::data("clg_10.ttl")};
  c.manifest_path = fixtures::data("caligraph_manifest.json");
  BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 1u);
  const BenchRow &row = r.rows[0];
  EXPECT_EQ(row.dataset, "clg_10");
  EXPECT_EQ(row.status, RowStatus::ok);
  EXPECT_EQ(row.triples, 35u);
  EXPECT_EQ(row.classes, 9u);
  EXPECT_EQ(row.restrictions, 2u);
  EXPECT_EQ(row.instances, 3u);
  EXPECT_EQ(row.inf_types, 10u);
  EXPECT_EQ(row.inf_individuals, 1u);
  EXPECT_EQ(row.inf_literals, 1u);
  EXPECT_GT(row.peak_mem_mb, 0.0);
  EXPECT_TRUE(r.mismatches.empty());
  EXPECT_EQ(r.exit_code(), 0);
  EXPECT_EQ(r.warnings.size(), 5u);  // manifest rows that were not run
}

TEST_F(Bench, MismatchAgainstManifest) {
  auto manifest = write("m.json", R"({"datasets": {"clg_10": {"inf_types": 11, "triples": 35}}})");
  BenchConfig c;
  c.datasets = {fixtures::data("clg_10.ttl")};
  c.manifest_path = manifest;
  BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.mismatches.size(), 1u);
  EXPECT_EQ(r.mismatches[0], (Mismatch{"clg_10", "inf_types", 11, 10}));
  EXPECT_EQ(r.rows[0].status, RowStatus::mismatch);
  EXPECT_EQ(r.exit_code(), 2);
}

TEST_F(Bench, UnreadableFileFlaggedAndRunContinues) {
  auto broken = write("broken.ttl", "<http://a> <http://b> .");
  BenchConfig c;
  c.datasets = {fixtures::data("clg_10.ttl"), (dir_ / "missing.ttl").string(), broken};
  BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 3u);
  std::map<std::string, RowStatus> status;
  for (const auto &row : r.rows) status[row.dataset] = row.status;
  EXPECT_EQ(status["clg_10"], RowStatus::ok);
  EXPECT_EQ(status["missing"], RowStatus::input_error);
  EXPECT_EQ(status["broken"], RowStatus::input_error);
  EXPECT_EQ(r.exit_code(), 4);
}

TEST_F(Bench, AscendingSizeOrder) {
  auto big = dump("big.nt", 400, 4000);
  auto small = dump("small.nt", 50, 100);
  BenchConfig c;
  c.datasets = {big, fixtures::data("clg_10.ttl"), small};
  BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].dataset, "clg_10");
  EXPECT_EQ(r.rows[1].dataset, "small");
  EXPECT_EQ(r.rows[2].dataset, "big");
}

TEST_F(Bench, TimeoutFlagsRowAndContinues) {
  auto big = dump("big.nt", 20000, 300000);
  BenchConfig c;
  c.datasets = {big, fixtures::data("clg_10.ttl")};
  c.timeout_s = 0.05;
  BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].dataset, "clg_10");
  EXPECT_EQ(r.rows[0].status, RowStatus::ok);
  EXPECT_EQ(r.rows[1].status, RowStatus::timeout);
  EXPECT_EQ(r.exit_code(), 3);
}

TEST_F(Bench, StreamingGivesSameCounts) {
  auto d = dump("d.nt", 300, 2000);
  BenchConfig c;
  c.datasets = {d};
  c.threads = 3;
  BenchReport a = run_benchmark(c);
  c.streaming = true;
  c.output_dir = (dir_ / "stream").string();
  BenchReport b = run_benchmark(c);
  EXPECT_EQ(a.rows[0].inf_types, b.rows[0].inf_types);
  EXPECT_EQ(a.rows[0].inf_individuals, b.rows[0].inf_individuals);
  EXPECT_EQ(a.rows[0].inf_literals, b.rows[0].inf_literals);
  EXPECT_TRUE(fs::exists(dir_ / "stream" / "d" / "inferred_types.nt"));
}

TEST_F(Bench, ReportsDeterministicApartFromTimings) {
  auto d = dump("d.nt", 300, 2000);
  BenchConfig c;
  c.datasets = {d, fixtures::data("clg_10.ttl")};
  auto strip = [](BenchReport r) {
    for (auto &row : r.rows) row.t_parse_s = row.t_tbox_s = row.t_mat_s = row.peak_mem_mb = 0;
    std::ostringstream out;
    write_report(r, ReportFormat::json, out);
    return out.str();
  };
  std::string first = strip(run_benchmark(c));
  c.threads = 4;
  EXPECT_EQ(first, strip(run_benchmark(c)));
}

TEST_F(Bench, CsvAndJsonReports) {
  BenchConfig c;
  c.datasets = {fixtures::data("clg_10.ttl")};
  c.report_path = (dir_ / "r.csv").string();
  run_benchmark(c);
  std::ifstream csv(*c.report_path);
  std::string header, line;
  std::getline(csv, header);
  std::getline(csv, line);
  EXPECT_EQ(header, kReportCsvHeader);
  EXPECT_EQ(line.rfind("clg_10,35,9,2,3,10,1,1,", 0), 0u) << line;
  EXPECT_TRUE(line.ends_with(",ok"));

  c.report_path = (dir_ / "r.json").string();
  c.format = ReportFormat::json;
  run_benchmark(c);
  std::ifstream js(*c.report_path);
  auto j = nlohmann::json::parse(js);
  EXPECT_EQ(j["rows"][0]["inf_types"], 10);
  EXPECT_EQ(j["rows"][0]["status"], "ok");
  EXPECT_EQ(j["exit_code"], 0);
}

TEST(BenchConfigChecks, InvalidSettings) {
  BenchConfig c;
  c.timeout_s = 0;
  EXPECT_THROW(run_benchmark(c), std::invalid_argument);
  c.timeout_s = 1;
  c.threads = 0;
  EXPECT_THROW(run_benchmark(c), std::invalid_argument);
}

}  // namespace
