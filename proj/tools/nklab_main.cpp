// Command-line front end: `verify` runs suites and writes reports; `catalog`
// inspects the pinned test-bed configurations.  Exit codes: 0 all checks pass,
// 1 at least one check failed (reports written), 2 usage/configuration error
// (no reports written).
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nklab/catalog.hpp"
#include "nklab/config.hpp"
#include "nklab/errors.hpp"
#include "nklab/report.hpp"
#include "nklab/suites.hpp"

namespace {

int do_verify(const nklab::RunConfig& cfg) {
    const nklab::RunReport rep = nklab::run(cfg);
    const std::string json_path = nklab::write_reports(rep, cfg.out_dir);

    for (const auto& sr : rep.suites) {
        int pass = 0, fail = 0, vac = 0;
        for (const auto& r : sr.records) {
            if (r.status == "pass")
                ++pass;
            else if (r.status == "fail")
                ++fail;
            else
                ++vac;
        }
        std::cout << std::left << std::setw(14) << sr.suite << std::right
                  << " " << std::setw(3) << sr.records.size() << " checks: "
                  << pass << " pass";
        if (fail > 0) std::cout << ", " << fail << " FAIL";
        if (vac > 0) std::cout << ", " << vac << " informational";
        std::cout << "\n";
        for (const auto& r : sr.records) {
            if (r.status != "fail") continue;
            std::cout << "  FAIL " << r.name << " [" << r.anchor
                      << "] residual " << std::setprecision(6) << r.residual
                      << " > tolerance " << r.tolerance;
            if (!r.note.empty()) std::cout << " (" << r.note << ")";
            std::cout << "\n";
        }
    }
    std::cout << "summary: " << rep.passed() << " pass, " << rep.failed()
              << " fail, " << rep.vacuous() << " informational\n"
              << "reports: " << json_path << "\n";
    return rep.failed() > 0 ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification laboratory for the nearly-Kaehler 6-sphere"};
    app.require_subcommand(1);

    std::vector<std::string> suite_choices = {"all"};
    for (const auto& s : nklab::suite_names()) suite_choices.push_back(s);

    auto* verify = app.add_subcommand(
        "verify", "run a verification suite and write reports");
    std::string suite = "all";
    std::uint64_t seed = 42;
    std::size_t nodes = 64, boundary_nodes = 256;
    std::vector<std::string> tol_overrides, catalog_ids;
    std::string out_dir, config_path;
    bool parallel = false;
    verify->add_option("suite", suite, "suite selector")
        ->check(CLI::IsMember(suite_choices));
    verify->add_option("--seed", seed, "seed for the sampled checks");
    verify->add_option("--nodes", nodes,
                       "interior quadrature nodes per axis (power of two >= 16)");
    verify->add_option("--boundary-nodes", boundary_nodes,
                       "boundary quadrature nodes (power of two >= 16)");
    verify->add_option("--tol-tier", tol_overrides,
                       "tolerance tier override, tier=value (repeatable)");
    verify->add_option("--catalog", catalog_ids,
                       "restrict patch-consuming suites to these catalog ids "
                       "(repeatable)");
    verify->add_option("--out", out_dir, "report output directory");
    verify->add_option("--config", config_path,
                       "key=value config file (CLI flags take precedence)");
    verify->add_flag("--parallel", parallel,
                     "run independent suites in separate threads");

    auto* catalog =
        app.add_subcommand("catalog", "inspect the pinned catalog");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "one line per entry");
    std::string dump_id;
    auto* dump = catalog->add_subcommand(
        "dump", "machine-readable dump of one entry");
    dump->add_option("id", dump_id, "catalog id")->required();

    try {
        app.parse(argc, argv);
        if (verify->parsed()) {
            // Precedence: CLI flag > NKLAB_OUT_DIR > config file > defaults.
            nklab::RunConfig cfg;
            if (!config_path.empty())
                nklab::apply_config_file(cfg, config_path);
            if (const char* env = std::getenv("NKLAB_OUT_DIR");
                env != nullptr && *env != '\0')
                cfg.out_dir = env;
            if (verify->count("suite") > 0) cfg.suite = suite;
            if (verify->count("--seed") > 0) cfg.seed = seed;
            if (verify->count("--nodes") > 0) cfg.nodes = nodes;
            if (verify->count("--boundary-nodes") > 0)
                cfg.boundary_nodes = boundary_nodes;
            if (verify->count("--out") > 0) cfg.out_dir = out_dir;
            if (verify->count("--parallel") > 0) cfg.parallel = true;
            if (!catalog_ids.empty()) cfg.catalog_ids = catalog_ids;
            for (const auto& ov : tol_overrides)
                nklab::apply_tol_override(cfg, ov);
            nklab::validate_config(cfg);
            return do_verify(cfg);
        }
        if (list->parsed()) {
            std::cout << nklab::catalog_list_text();
            return 0;
        }
        if (dump->parsed()) {
            std::cout << nklab::catalog_dump_text(dump_id);
            return 0;
        }
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const nklab::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
