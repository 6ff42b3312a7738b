#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nklab/config.hpp"

namespace nklab {

/// One verification record.  `anchor` is a stable identity slug naming the
/// fact under test, so failures can be located without reading the code.
struct CheckRecord {
    std::string suite;
    std::string name;
    std::string anchor;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string status;  // "pass" | "fail" | "vacuous"
    double runtime_s = 0.0;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckRecord> records;
    /// Extra rows for the eigenvalue CSV: (series label, index, value).
    std::vector<std::pair<std::string, double>> eigen_rows;

    /// Record a residual-vs-tolerance check (status derived).
    void check(const std::string& name, const std::string& anchor,
               double residual, double tolerance, double runtime_s = 0.0,
               const std::string& note = "");
    /// Record a boolean check (residual 0/1 against tolerance 0.5).
    void check_bool(const std::string& name, const std::string& anchor,
                    bool ok, double runtime_s = 0.0,
                    const std::string& note = "");
    /// Record an informational (vacuous) entry that cannot fail.
    void info(const std::string& name, const std::string& anchor, double value,
              const std::string& note = "");
    int failed() const;
};

struct RunReport {
    std::string schema_version = "1";
    std::string timestamp;  // ISO-8601; the only intentionally variable field
    std::uint64_t seed = 0;
    std::string suite_selector;
    std::size_t nodes = 0;
    std::size_t boundary_nodes = 0;
    std::vector<SuiteReport> suites;  // ordered by canonical suite order

    int passed() const;
    int failed() const;
    int vacuous() const;
};

std::string iso8601_now();

/// Pretty-printed JSON; every volatile field (timestamp, runtime_s) occupies
/// its own line so byte comparison modulo those lines is trivial.
std::string run_report_json(const RunReport& rep);

/// CSV of all check records (no volatile fields; fully reproducible).
std::string residuals_csv(const RunReport& rep);

/// CSV of eigenvalue-like series gathered by the suites.
std::string eigenvalues_csv(const RunReport& rep);

/// Write report.json, residuals.csv and (when non-empty) eigenvalues.csv
/// under out_dir, creating the directory if needed.  Returns the JSON path.
std::string write_reports(const RunReport& rep, const std::string& out_dir);

}  // namespace nklab
