#include "nklab/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nklab/errors.hpp"

namespace nklab {

void SuiteReport::check(const std::string& name, const std::string& anchor,
                        double residual, double tolerance, double runtime_s,
                        const std::string& note) {
    CheckRecord r;
    r.suite = suite;
    r.name = name;
    r.anchor = anchor;
    r.residual = residual;
    r.tolerance = tolerance;
    r.status = (std::isfinite(residual) && residual <= tolerance) ? "pass"
                                                                  : "fail";
    r.runtime_s = runtime_s;
    r.note = note;
    records.push_back(std::move(r));
}

void SuiteReport::check_bool(const std::string& name, const std::string& anchor,
                             bool ok, double runtime_s,
                             const std::string& note) {
    CheckRecord r;
    r.suite = suite;
    r.name = name;
    r.anchor = anchor;
    r.residual = ok ? 0.0 : 1.0;
    r.tolerance = 0.5;
    r.status = ok ? "pass" : "fail";
    r.runtime_s = runtime_s;
    r.note = note;
    records.push_back(std::move(r));
}

void SuiteReport::info(const std::string& name, const std::string& anchor,
                       double value, const std::string& note) {
    CheckRecord r;
    r.suite = suite;
    r.name = name;
    r.anchor = anchor;
    r.residual = value;
    r.tolerance = 0.0;
    r.status = "vacuous";
    r.note = note;
    records.push_back(std::move(r));
}

int SuiteReport::failed() const {
    int n = 0;
    for (const auto& r : records) n += (r.status == "fail") ? 1 : 0;
    return n;
}

int RunReport::passed() const {
    int n = 0;
    for (const auto& s : suites) {
        for (const auto& r : s.records) n += (r.status == "pass") ? 1 : 0;
    }
    return n;
}

int RunReport::failed() const {
    int n = 0;
    for (const auto& s : suites) n += s.failed();
    return n;
}

int RunReport::vacuous() const {
    int n = 0;
    for (const auto& s : suites) {
        for (const auto& r : s.records) n += (r.status == "vacuous") ? 1 : 0;
    }
    return n;
}

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string run_report_json(const RunReport& rep) {
    nlohmann::ordered_json j;
    j["schema_version"] = rep.schema_version;
    j["timestamp"] = rep.timestamp;
    j["seed"] = rep.seed;
    j["suite"] = rep.suite_selector;
    j["nodes"] = rep.nodes;
    j["boundary_nodes"] = rep.boundary_nodes;
    j["summary"] = {{"passed", rep.passed()},
                    {"failed", rep.failed()},
                    {"vacuous", rep.vacuous()}};
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& s : rep.suites) {
        for (const auto& r : s.records) {
            nlohmann::ordered_json c;
            c["suite"] = r.suite;
            c["name"] = r.name;
            c["anchor"] = r.anchor;
            c["residual"] = r.residual;
            c["tolerance"] = r.tolerance;
            c["status"] = r.status;
            c["runtime_s"] = r.runtime_s;
            c["note"] = r.note;
            checks.push_back(std::move(c));
        }
    }
    j["checks"] = std::move(checks);
    return j.dump(2) + "\n";
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string residuals_csv(const RunReport& rep) {
    std::ostringstream os;
    os << "suite,name,anchor,residual,tolerance,status,note\n";
    for (const auto& s : rep.suites) {
        for (const auto& r : s.records) {
            os << csv_escape(r.suite) << ',' << csv_escape(r.name) << ','
               << csv_escape(r.anchor) << ',' << num(r.residual) << ','
               << num(r.tolerance) << ',' << r.status << ','
               << csv_escape(r.note) << '\n';
        }
    }
    return os.str();
}

std::string eigenvalues_csv(const RunReport& rep) {
    std::ostringstream os;
    os << "series,index,value\n";
    for (const auto& s : rep.suites) {
        std::size_t i = 0;
        std::string last;
        for (const auto& [label, v] : s.eigen_rows) {
            if (label != last) {
                last = label;
                i = 0;
            }
            os << csv_escape(label) << ',' << i++ << ',' << num(v) << '\n';
        }
    }
    return os.str();
}

std::string write_reports(const RunReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw UsageError("cannot create output directory: " + out_dir);
    const std::string json_path = (fs::path(out_dir) / "report.json").string();
    {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw UsageError("cannot write " + json_path);
        out << run_report_json(rep);
    }
    {
        std::ofstream out((fs::path(out_dir) / "residuals.csv").string(),
                          std::ios::binary);
        out << residuals_csv(rep);
    }
    bool any_eigen = false;
    for (const auto& s : rep.suites) any_eigen |= !s.eigen_rows.empty();
    if (any_eigen) {
        std::ofstream out((fs::path(out_dir) / "eigenvalues.csv").string(),
                          std::ios::binary);
        out << eigenvalues_csv(rep);
    }
    return json_path;
}

}  // namespace nklab
