#pragma once

#include <string>
#include <vector>

#include "bohmflow/analysis.hpp"
#include "bohmflow/config.hpp"

namespace bohmflow {

/// Exit codes shared by the library commands, the C API and the CLI.
enum ExitCode {
    kExitOk = 0,
    kExitConfig = 2,
    kExitDegeneracy = 3,
    kExitIo = 4,
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::string report_text; // printed summary (empty on failure)
    std::string error;       // diagnostic on failure
};

const char* version_string();

/// Full scenario run: ensembles, trajectory/field CSVs, report files and
/// figures into cfg.out_dir, deterministic in the seed.
RunOutcome cmd_run(const RunConfig& cfg, int threads);

/// Field-grid evaluation at one time: CSV plus P/Q heatmaps and a
/// current streamline figure.  nx/nz/time <= 0 fall back to the config.
RunOutcome cmd_fields(const RunConfig& cfg, int nx, int nz, double time,
                      int threads);

/// One-parameter sweep over a numeric config key; all runs share the
/// configured seed.  Emits a CSV of (value, P_D1, P_D2, plane_flux,
/// visibility).
RunOutcome cmd_sweep(const RunConfig& cfg, const std::string& param,
                     const std::vector<double>& values, int threads);

/// Shared helper: ensemble starting points for a component (Born or fan
/// mode per config).
std::vector<ConfigPoint> starting_points(const RunConfig& cfg,
                                         const EntangledState& state,
                                         std::uint64_t seed);

} // namespace bohmflow
