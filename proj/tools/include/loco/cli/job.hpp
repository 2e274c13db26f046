#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loco/errors.hpp"
#include "loco/findim.hpp"
#include "loco/monomial.hpp"

namespace loco::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kPass = 0, kCertificateFailed = 1, kSchemaError = 2, kComputationError = 3 };

/// Job file does not parse or does not match the schema.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error("SchemaError: " + what) {}
};

struct RunOptions {
    unsigned threads = 0;      // degree parallelism, 0 = hardware default
    std::uint64_t seed = 1;    // sampling in zp-laws
};

struct JobOutcome {
    int exit_code = kPass;
    nlohmann::ordered_json report;
    std::vector<std::string> failures;  // one line per failed certificate/expectation/error
};

/// "x^2*y", "1", or an exponent array; variables x, y, z for n <= 3 and
/// x1..xn otherwise.
Monomial parse_monomial(const nlohmann::ordered_json& j, std::size_t n);
/// Group names: C<n>, C<n>^k, V4, D<n> (order 2n), Q8 and products joined by
/// 'x', e.g. "C2xC4".
std::vector<std::vector<int>> group_table_by_name(const std::string& name);
FinDimAlgebra algebra_from_spec(const nlohmann::ordered_json& spec, const FieldSpec& field);

JobOutcome run_job_text(const std::string& text, const std::string& source, const RunOptions& options = {});
/// Reads and runs a job file. Unreadable files are schema errors.
JobOutcome run_job(const std::string& path, const RunOptions& options = {});

/// Flattened results as CSV: task,key,value.
std::string report_to_csv(const nlohmann::ordered_json& report);
/// Report with the volatile "timestamp" member removed.
nlohmann::ordered_json stable_part(const nlohmann::ordered_json& report);

struct SuiteRow {
    std::string file;
    int exit_code;
    std::vector<std::string> failures;
};
struct SuiteOutcome {
    int exit_code = kPass;  // worst job exit code
    std::vector<SuiteRow> rows;
    std::vector<std::string> warnings;
    nlohmann::ordered_json summary;
};
/// Runs every *.json file of the directory in name order.
SuiteOutcome run_suite(const std::string& directory, const RunOptions& options = {});

}  // namespace loco::cli
