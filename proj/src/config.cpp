#include "nklab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "nklab/errors.hpp"

namespace nklab {

std::map<std::string, double> default_tol_tiers() {
    return {
        {"exact", 1e-12},   // closed-form identities, no differentiation
        {"algebra", 1e-10}, // algebraic cancellation over many terms
        {"frame", 1e-8},    // frame constructions and calibrations
        {"tensor", 1e-7},   // algebraic identities through frame changes
        {"mean", 1e-6},     // averaged / interpolated quantities
        {"fd1", 1e-5},      // one finite-difference layer
        {"fd2", 1e-4},      // two finite-difference layers
        {"quad", 1e-3},     // integral-vs-integral comparisons
    };
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "algebra", "nk-identities", "curve", "variation", "index", "cone"};
    return names;
}

bool is_suite_name(const std::string& name) {
    if (name == "all") return true;
    const auto& n = suite_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config line " + std::to_string(lineno) +
                             " is not key=value: " + t);
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        try {
            if (key == "suite") {
                cfg.suite = val;
            } else if (key == "seed") {
                cfg.seed = std::stoull(val);
            } else if (key == "nodes") {
                cfg.nodes = std::stoul(val);
            } else if (key == "boundary_nodes") {
                cfg.boundary_nodes = std::stoul(val);
            } else if (key == "out_dir") {
                cfg.out_dir = val;
            } else if (key == "parallel") {
                cfg.parallel = (val == "1" || val == "true" || val == "yes");
            } else if (key == "catalog") {
                cfg.catalog_ids.push_back(val);
            } else if (key.rfind("tol.", 0) == 0) {
                apply_tol_override(cfg, key.substr(4) + "=" + val);
            } else {
                throw UsageError("unknown config key: " + key);
            }
        } catch (const std::invalid_argument&) {
            throw UsageError("bad value for config key " + key + ": " + val);
        } catch (const std::out_of_range&) {
            throw UsageError("value out of range for config key " + key);
        }
    }
}

void apply_tol_override(RunConfig& cfg, const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
        throw UsageError("tolerance override must be tier=value: " + text);
    }
    const std::string tier = trim(text.substr(0, eq));
    const std::string val = trim(text.substr(eq + 1));
    if (cfg.tol.find(tier) == cfg.tol.end()) {
        throw UsageError("unknown tolerance tier: " + tier);
    }
    double v = 0.0;
    try {
        v = std::stod(val);
    } catch (const std::exception&) {
        throw UsageError("bad tolerance value: " + val);
    }
    if (!(v > 0.0)) throw UsageError("tolerance must be positive: " + text);
    cfg.tol[tier] = v;
}

bool is_pow2_ge16(std::size_t n) {
    return n >= 16 && (n & (n - 1)) == 0;
}

void validate_config(const RunConfig& cfg) {
    if (!is_suite_name(cfg.suite)) {
        throw UsageError("unknown suite: " + cfg.suite);
    }
    if (!is_pow2_ge16(cfg.nodes)) {
        throw UsageError("nodes must be a power of two >= 16");
    }
    if (!is_pow2_ge16(cfg.boundary_nodes)) {
        throw UsageError("boundary_nodes must be a power of two >= 16");
    }
    for (const auto& [k, v] : cfg.tol) {
        if (!(v > 0.0)) throw UsageError("tolerance tier " + k + " not positive");
    }
}

double tol_tier(const RunConfig& cfg, const std::string& tier) {
    const auto it = cfg.tol.find(tier);
    if (it == cfg.tol.end()) throw UsageError("unknown tolerance tier: " + tier);
    return it->second;
}

}  // namespace nklab
