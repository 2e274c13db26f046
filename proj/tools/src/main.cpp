#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "loco/cli/job.hpp"

namespace {

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
    return static_cast<bool>(out);
}

std::string csv_path(const std::string& out) {
    return std::filesystem::path(out).replace_extension(".csv").string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loco: local cohomology, completion and Gorenstein checks from job files"};
    std::string job, suite, out;
    bool csv = false;
    loco::cli::RunOptions options;
    auto* job_opt = app.add_option("--job", job, "job file to run")->envname("LOCO_JOB");
    auto* suite_opt = app.add_option("--suite", suite, "run every *.json job in a directory")->envname("LOCO_SUITE");
    job_opt->excludes(suite_opt);
    app.add_option("--out", out, "write the report (or suite summary) JSON here")->envname("LOCO_OUT");
    app.add_flag("--csv", csv, "also write a CSV next to --out (stdout without --out)")->envname("LOCO_CSV");
    app.add_option("--threads", options.threads, "degree-parallel workers, 0 = all cores")->envname("LOCO_THREADS");
    app.add_option("--seed", options.seed, "seed for sampled property checks")->envname("LOCO_SEED");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : loco::cli::kSchemaError;
    }
    if (job.empty() && suite.empty()) {
        std::cerr << "one of --job or --suite is required\n" << app.help();
        return loco::cli::kSchemaError;
    }

    if (!suite.empty()) {
        auto s = loco::cli::run_suite(suite, options);
        for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
        for (const auto& row : s.rows) {
            std::cout << (row.exit_code == 0 ? "PASS " : "FAIL ") << row.file << " (exit " << row.exit_code << ")\n";
            for (const auto& f : row.failures) std::cout << "    " << f << "\n";
        }
        std::cout << s.summary["passed"].get<long>() << "/" << s.rows.size() << " jobs passed\n";
        if (!out.empty() && !write_file(out, s.summary.dump(2) + "\n")) {
            std::cerr << "cannot write " << out << "\n";
            return loco::cli::kComputationError;
        }
        return s.exit_code;
    }

    auto r = loco::cli::run_job(job, options);
    std::string text = r.report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        if (csv) std::cout << loco::cli::report_to_csv(r.report);
    } else {
        if (!write_file(out, text) || (csv && !write_file(csv_path(out), loco::cli::report_to_csv(r.report)))) {
            std::cerr << "cannot write " << out << "\n";
            return loco::cli::kComputationError;
        }
    }
    for (const auto& f : r.failures) std::cerr << f << "\n";
    return r.exit_code;
}
