#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nklab {

/// Tolerance tiers, overridable per run: named thresholds ordered by the
/// number of derivative/quadrature layers behind each check.
std::map<std::string, double> default_tol_tiers();

struct RunConfig {
    std::string suite = "all";
    std::vector<std::string> catalog_ids;
    std::uint64_t seed = 42;
    std::size_t nodes = 64;            // interior quadrature nodes per axis
    std::size_t boundary_nodes = 256;  // boundary line-integral nodes
    std::map<std::string, double> tol = default_tol_tiers();
    std::string out_dir = "reports";
    bool parallel = false;
};

/// Known suite selectors, in canonical run order.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Parse a flat key=value config file into cfg (later sources override).
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Apply one "tier=value" override; unknown tier or non-positive value throws.
void apply_tol_override(RunConfig& cfg, const std::string& text);

/// Validate node counts (powers of two >= 16), tolerances, suite name.
void validate_config(const RunConfig& cfg);

/// Look up a tier value; unknown tier name throws.
double tol_tier(const RunConfig& cfg, const std::string& tier);

bool is_pow2_ge16(std::size_t n);

}  // namespace nklab
