#pragma once

#include <string>

#include "delaybeam/config.hpp"

namespace delaybeam {

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

/// Runs one simulation; writes trace.csv, summary.json and the resolved
/// config echo into `out_dir`. Returns an exit code; diagnostics go to
/// stderr.
int cmd_simulate(const RunConfig& cfg, const std::string& out_dir);

/// Samples the stability region; writes region.csv and boundaries.csv.
int cmd_region(const RunConfig& cfg, const std::string& out_dir);

/// Simulates an (alpha, xi) grid in parallel; writes sweep.csv with rows
/// sorted by (alpha, xi) regardless of worker count. Per-point failures are
/// recorded in-row, not fatal.
int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int workers);

/// Closed-form static solve vs the finite-difference oracle over three grid
/// levels; writes resolvent.csv and resolvent_summary.json.
int cmd_resolvent(const RunConfig& cfg, const std::string& out_dir);

}  // namespace delaybeam
