#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nklab/config.hpp"
#include "nklab/errors.hpp"
#include "nklab/report.hpp"
#include "nklab/suites.hpp"

using namespace nklab;

namespace {

std::string strip_volatile(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("timestamp") != std::string::npos) continue;
        if (line.find("runtime_s") != std::string::npos) continue;
        out << line << "\n";
    }
    return out.str();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("tolerance tiers: defaults, overrides, validation") {
    RunConfig cfg;
    CHECK(cfg.tol.size() == 8);
    CHECK(tol_tier(cfg, "exact") == 1e-12);
    CHECK(tol_tier(cfg, "quad") == 1e-3);
    apply_tol_override(cfg, "fd1=2e-5");
    CHECK(tol_tier(cfg, "fd1") == 2e-5);
    CHECK_THROWS_AS(apply_tol_override(cfg, "nope=1e-3"), UsageError);
    CHECK_THROWS_AS(apply_tol_override(cfg, "fd1=-1"), UsageError);
    CHECK_THROWS_AS(apply_tol_override(cfg, "fd1"), UsageError);
    CHECK_THROWS_AS(apply_tol_override(cfg, "fd1=banana"), UsageError);
    CHECK_THROWS_AS(tol_tier(cfg, "missing"), UsageError);
}

TEST_CASE("node counts must be powers of two at least 16") {
    CHECK(is_pow2_ge16(16));
    CHECK(is_pow2_ge16(64));
    CHECK(is_pow2_ge16(256));
    CHECK_FALSE(is_pow2_ge16(8));
    CHECK_FALSE(is_pow2_ge16(15));
    CHECK_FALSE(is_pow2_ge16(24));
    CHECK_FALSE(is_pow2_ge16(0));
    RunConfig cfg;
    cfg.nodes = 24;
    CHECK_THROWS_AS(validate_config(cfg), UsageError);
    cfg.nodes = 64;
    cfg.suite = "unknown-suite";
    CHECK_THROWS_AS(validate_config(cfg), UsageError);
    cfg.suite = "algebra";
    CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("canonical suite order is pinned") {
    const std::vector<std::string> expect = {"algebra", "nk-identities",
                                             "curve",   "variation",
                                             "index",   "cone"};
    CHECK(suite_names() == expect);
    CHECK(is_suite_name("all"));
    CHECK(is_suite_name("cone"));
    CHECK_FALSE(is_suite_name("kone"));
}

TEST_CASE("config files parse with key=value semantics") {
    const std::string path = "test-config-tmp.cfg";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "suite = variation\n"
            << "seed=7\n"
            << "nodes = 32\n"
            << "boundary_nodes=128\n"
            << "out_dir = some/dir\n"
            << "parallel = true\n"
            << "catalog = halfsphere-lag\n"
            << "tol.quad = 5e-3\n";
    }
    RunConfig cfg;
    apply_config_file(cfg, path);
    CHECK(cfg.suite == "variation");
    CHECK(cfg.seed == 7);
    CHECK(cfg.nodes == 32);
    CHECK(cfg.boundary_nodes == 128);
    CHECK(cfg.out_dir == "some/dir");
    CHECK(cfg.parallel);
    REQUIRE(cfg.catalog_ids.size() == 1);
    CHECK(cfg.catalog_ids[0] == "halfsphere-lag");
    CHECK(tol_tier(cfg, "quad") == 5e-3);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(apply_config_file(cfg, "does-not-exist.cfg"), UsageError);
    {
        std::ofstream out(path);
        out << "not a kv line\n";
    }
    CHECK_THROWS_AS(apply_config_file(cfg, path), UsageError);
    {
        std::ofstream out(path);
        out << "mystery = 3\n";
    }
    CHECK_THROWS_AS(apply_config_file(cfg, path), UsageError);
    std::filesystem::remove(path);
}

TEST_CASE("check records derive status from residual vs tolerance") {
    SuiteReport sr;
    sr.suite = "demo";
    sr.check("ok", "demo.ok", 1e-9, 1e-6, 0.1);
    sr.check("bad", "demo.bad", 1e-3, 1e-6, 0.1);
    sr.check("nan", "demo.nan", std::nan(""), 1e-6, 0.1);
    sr.check_bool("flag", "demo.flag", true, 0.0);
    sr.info("note", "demo.note", 42.0, "informational only");
    REQUIRE(sr.records.size() == 5);
    CHECK(sr.records[0].status == "pass");
    CHECK(sr.records[1].status == "fail");
    CHECK(sr.records[2].status == "fail");
    CHECK(sr.records[3].status == "pass");
    CHECK(sr.records[4].status == "vacuous");
    CHECK(sr.failed() == 2);
}

TEST_CASE("report JSON is structured and volatile fields sit on own lines") {
    RunReport rep;
    rep.timestamp = "2026-08-23T10:00:00Z";
    rep.seed = 42;
    rep.suite_selector = "algebra";
    rep.nodes = 64;
    rep.boundary_nodes = 256;
    rep.suites.emplace_back();
    rep.suites[0].suite = "algebra";
    rep.suites[0].check("a", "x.a", 1e-13, 1e-12, 0.25, "with, comma");
    rep.suites[0].check("b", "x.b", 2.0, 1.0, 0.5, "quote \" inside");

    const std::string text = run_report_json(rep);
    const auto j = nlohmann::json::parse(text);
    CHECK(j["schema_version"] == "1");
    CHECK(j["seed"] == 42);
    CHECK(j["suite"] == "algebra");
    CHECK(j["nodes"] == 64);
    CHECK(j["boundary_nodes"] == 256);
    CHECK(j["summary"]["passed"] == 1);
    CHECK(j["summary"]["failed"] == 1);
    REQUIRE(j["checks"].size() == 2);
    CHECK(j["checks"][0]["anchor"] == "x.a");
    CHECK(j["checks"][0]["status"] == "pass");
    CHECK(j["checks"][1]["status"] == "fail");

    // a second report differing only in volatile fields strips to equality
    RunReport rep2 = rep;
    rep2.timestamp = "2027-01-01T00:00:00Z";
    rep2.suites[0].records[0].runtime_s = 99.0;
    CHECK(strip_volatile(run_report_json(rep)) ==
          strip_volatile(run_report_json(rep2)));
    CHECK(run_report_json(rep) != run_report_json(rep2));
}

TEST_CASE("CSV artifacts: header, escaping, per-series index reset") {
    RunReport rep;
    rep.suites.emplace_back();
    rep.suites[0].suite = "demo";
    rep.suites[0].check("plain", "d.p", 0.5, 1.0, 0.0, "note, with comma");
    rep.suites[0].eigen_rows.emplace_back("alpha", 1.5);
    rep.suites[0].eigen_rows.emplace_back("alpha", 2.5);
    rep.suites[0].eigen_rows.emplace_back("beta", -1.0);

    const std::string csv = residuals_csv(rep);
    CHECK(csv.rfind("suite,name,anchor,residual,tolerance,status,note\n", 0) ==
          0);
    CHECK(csv.find("\"note, with comma\"") != std::string::npos);

    const std::string eig = eigenvalues_csv(rep);
    CHECK(eig.rfind("series,index,value\n", 0) == 0);
    CHECK(eig.find("alpha,0,") != std::string::npos);
    CHECK(eig.find("alpha,1,") != std::string::npos);
    CHECK(eig.find("beta,0,") != std::string::npos);
}

TEST_CASE("write_reports produces the artifact files") {
    RunReport rep;
    rep.timestamp = "2026-08-23T10:00:00Z";
    rep.suite_selector = "algebra";
    rep.suites.emplace_back();
    rep.suites[0].suite = "algebra";
    rep.suites[0].check("a", "x.a", 0.0, 1.0, 0.0);
    const std::string dir = "test-report-out-tmp";
    const std::string json_path = write_reports(rep, dir);
    CHECK(std::filesystem::exists(json_path));
    CHECK(std::filesystem::exists(dir + "/residuals.csv"));
    CHECK_FALSE(std::filesystem::exists(dir + "/eigenvalues.csv"));
    const std::string text = slurp(json_path);
    CHECK(text == run_report_json(rep));

    rep.suites[0].eigen_rows.emplace_back("spec", 1.0);
    write_reports(rep, dir);
    CHECK(std::filesystem::exists(dir + "/eigenvalues.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("suite runs are deterministic for a fixed seed") {
    RunConfig cfg;
    cfg.suite = "algebra";
    const SuiteReport a = run_algebra(cfg);
    const SuiteReport b = run_algebra(cfg);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].name == b.records[i].name);
        CHECK(a.records[i].anchor == b.records[i].anchor);
        CHECK(a.records[i].residual == b.records[i].residual);
        CHECK(a.records[i].tolerance == b.records[i].tolerance);
        CHECK(a.records[i].status == b.records[i].status);
    }
    // different seeds change sampled residuals but not the verdicts
    RunConfig cfg2 = cfg;
    cfg2.seed = 1234;
    const SuiteReport c = run_algebra(cfg2);
    CHECK(c.failed() == 0);
}

TEST_CASE("iso8601 timestamps have the pinned shape") {
    const std::string ts = iso8601_now();
    REQUIRE(ts.size() == 20);
    CHECK(ts[4] == '-');
    CHECK(ts[7] == '-');
    CHECK(ts[10] == 'T');
    CHECK(ts[13] == ':');
    CHECK(ts[16] == ':');
    CHECK(ts[19] == 'Z');
}
