#pragma once

#include "nklab/config.hpp"
#include "nklab/report.hpp"

namespace nklab {

/// Verification suites.  Each returns a SuiteReport with one record per check;
/// records carry the measured residual, the applied tolerance, and a stable
/// anchor slug identifying the property being verified.  All randomness is
/// drawn from a per-suite generator seeded by cfg.seed xor a hash of the
/// suite name, so runs are reproducible per suite even under --parallel.
SuiteReport run_algebra(const RunConfig& cfg);
SuiteReport run_nk_identities(const RunConfig& cfg);
SuiteReport run_curve(const RunConfig& cfg);
SuiteReport run_variation(const RunConfig& cfg);
SuiteReport run_index(const RunConfig& cfg);
SuiteReport run_cone(const RunConfig& cfg);

/// Runs the selected suites (canonical order; "all" = every suite) and
/// assembles the run report.  With cfg.parallel the suites execute on
/// threads and the results are merged back in canonical order.
RunReport run(const RunConfig& cfg);

}  // namespace nklab
