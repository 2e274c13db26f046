#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "loco/cli/job.hpp"

using namespace loco::cli;
namespace fs = std::filesystem;

namespace {

const std::string kCorpus = LOCO_CORPUS_DIR;
const std::string kData = LOCO_TEST_DATA_DIR;

fs::path temp_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("loco-cli-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(Cli, MonomialParsing) {
    EXPECT_EQ(parse_monomial("x^2*y", 2), (loco::Monomial{2, 1}));
    EXPECT_EQ(parse_monomial("1", 3), (loco::Monomial{0, 0, 0}));
    EXPECT_EQ(parse_monomial("x2*x4^3", 4), (loco::Monomial{0, 1, 0, 3}));
    EXPECT_EQ(parse_monomial(nlohmann::ordered_json::array({1, 0, 2}), 3), (loco::Monomial{1, 0, 2}));
    EXPECT_THROW(parse_monomial("w", 2), SchemaError);
    EXPECT_THROW(parse_monomial("x^-1", 1), SchemaError);
}

TEST(Cli, GroupNames) {
    EXPECT_EQ(group_table_by_name("C2xC4").size(), 8u);
    EXPECT_EQ(group_table_by_name("C2^4").size(), 16u);
    EXPECT_EQ(group_table_by_name("D4").size(), 8u);
    EXPECT_EQ(group_table_by_name("Q8").size(), 8u);
    EXPECT_THROW(group_table_by_name("S3"), SchemaError);
}

TEST(Cli, ZpExampleJob) {
    auto r = run_job(kCorpus + "/z-p-example.json");
    EXPECT_EQ(r.exit_code, kPass);
    const auto& tasks = r.report["tasks"];
    EXPECT_EQ(tasks[0]["result"]["H1"], "Zpinf");
    EXPECT_EQ(tasks[0]["result"]["H0"], "0");
    EXPECT_EQ(r.report["schema_version"], kSchemaVersion);
}

TEST(Cli, MalformedJsonIsSchemaError) {
    EXPECT_EQ(run_job(kData + "/malformed.json").exit_code, kSchemaError);
    EXPECT_EQ(run_job_text("{\"tasks\": [\"nope\"]}", "x").exit_code, kSchemaError);
    EXPECT_EQ(run_job_text("{\"tasks\": [\"local-cohomology\"], \"field\": \"QQ\"}", "x").exit_code, kSchemaError);
    EXPECT_EQ(run_job_text(R"({"tasks": ["local-cohomology"], "field": "QQ", "ring": 2, "ideal": ["x"],
                               "box": {"lo": [0], "hi": [1]}})",
                           "x")
                  .exit_code,
              kSchemaError);
    EXPECT_EQ(run_job(kData + "/does-not-exist.json").exit_code, kSchemaError);
}

TEST(Cli, FailingExpectationHasWitness) {
    auto r = run_job(kData + "/failing-h2.json");
    EXPECT_EQ(r.exit_code, kCertificateFailed);
    ASSERT_FALSE(r.failures.empty());
    EXPECT_NE(r.failures[0].find("[-1,-1]"), std::string::npos);
    EXPECT_EQ(r.report["expectations"][0]["actual"], 1);
}

TEST(Cli, ComputationErrorExitCode) {
    // Too few stages for the colimit to settle.
    auto r = run_job_text(R"({"field": "QQ", "ring": 2, "ideal": ["x^3*y^3", "x*y^4"], "box": {"cube": [-9, 9]},
                              "parameters": {"s_max": 3}, "tasks": ["koszul-colimit"]})",
                          "x");
    EXPECT_EQ(r.exit_code, kComputationError);
    EXPECT_TRUE(r.report["tasks"][0].contains("unstable_cells"));
}

TEST(Cli, ReportsAreDeterministic) {
    auto a = run_job(kCorpus + "/k2-mixed-qq.json", RunOptions{1, 7});
    auto b = run_job(kCorpus + "/k2-mixed-qq.json", RunOptions{3, 7});
    EXPECT_EQ(stable_part(a.report).dump(), stable_part(b.report).dump());
    auto c = run_job(kCorpus + "/z-p-example.json", RunOptions{1, 99});
    auto d = run_job(kCorpus + "/z-p-example.json", RunOptions{1, 99});
    EXPECT_EQ(stable_part(c.report).dump(), stable_part(d.report).dump());
    EXPECT_TRUE(a.report.contains("parameters"));
    EXPECT_EQ(a.report["parameters"]["box"]["lo"], nlohmann::ordered_json::array({-4, -4}));
    EXPECT_EQ(a.report["parameters"]["s_max"], 6);
}

TEST(Cli, CsvExport) {
    auto r = run_job(kCorpus + "/k2-max-degrees.json");
    auto csv = report_to_csv(r.report);
    EXPECT_EQ(csv.rfind("task,key,value\n", 0), 0u);
    EXPECT_NE(csv.find("local-cohomology,\"H2[-1,-1]\",1"), std::string::npos);
}

TEST(Cli, Suites) {
    auto empty = temp_dir("empty");
    auto s = run_suite(empty.string());
    EXPECT_EQ(s.exit_code, kPass);
    EXPECT_EQ(s.rows.size(), 0u);
    EXPECT_FALSE(s.warnings.empty());

    auto mixed = temp_dir("mixed");
    fs::copy_file(kCorpus + "/z-p-example.json", mixed / "a.json");
    fs::copy_file(kCorpus + "/k1-x-R-qq.json", mixed / "b.json");
    EXPECT_EQ(run_suite(mixed.string()).exit_code, kPass);
    fs::copy_file(kData + "/failing-h2.json", mixed / "c.json");
    auto bad = run_suite(mixed.string());
    EXPECT_NE(bad.exit_code, kPass);
    EXPECT_EQ(bad.rows.size(), 3u);
    EXPECT_EQ(bad.summary["passed"], 2);
}

TEST(Cli, BinaryExitCodes) {
    const std::string bin = LOCO_BINARY;
    auto run = [&](const std::string& args) {
        int status = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    EXPECT_EQ(run("--job " + kCorpus + "/z-p-example.json"), 0);
    EXPECT_EQ(run("--job " + kData + "/malformed.json"), 2);
    EXPECT_EQ(run("--job " + kData + "/failing-h2.json"), 1);
    EXPECT_EQ(run("--suite " + temp_dir("bin-empty").string()), 0);
    EXPECT_EQ(run(""), 2);
    auto out = temp_dir("bin-out") / "report.json";
    EXPECT_EQ(run("--job " + kCorpus + "/k1-x-R-qq.json --csv --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out));
    EXPECT_TRUE(fs::exists(fs::path(out).replace_extension(".csv")));
    // Environment variables mirror the flags.
    int status = std::system(("LOCO_JOB=" + kData + "/failing-h2.json " + bin + " > /dev/null 2>&1").c_str());
    EXPECT_EQ(WEXITSTATUS(status), 1);
}
