#pragma once

#include <string>
#include <vector>

#include "femto/config.hpp"
#include "femto/simulation.hpp"

namespace femto {

/// A demand sweep over one scenario: the base configuration plus the list
/// of per-user demands to evaluate.
struct ExperimentSpec {
    SystemConfig base{};
    std::vector<double> demand_sweep_bps; // strictly increasing
    std::string label = "experiment";
    std::string output_csv; // empty writes to stdout

    void validate() const; // throws ConfigError naming the offending key
};

/// Parses INI-style text: [section] headers group keys for readability,
/// `key = value` lines set them, `#` or `;` starts a comment. Keys are
/// globally unique; unknown keys and sections are rejected by name. Keys
/// not mentioned keep their defaults; an absent sweep falls back to the
/// single configured demand_bps.
ExperimentSpec parse_config(const std::string& text);

/// parse_config over the contents of a file.
ExperimentSpec load_config(const std::string& path);

/// Applies one `key=value` override on top of a parsed spec.
void apply_override(ExperimentSpec& spec, const std::string& assignment);

/// One aggregated point per sweep demand, in sweep order.
std::vector<SweepPoint> run_sweep(const ExperimentSpec& spec, int jobs = 1);

/// Fixed-format CSV of a sweep, one row per point:
///   demand_bps,outage_mean,outage_stderr,min_rate_mean,max_rate_mean,n_trials,seed
std::string to_csv(const std::vector<SweepPoint>& points, std::uint64_t seed);

/// Runs the sweep and writes the CSV to spec.output_csv (stdout if empty).
/// Returns the sweep points for further inspection.
std::vector<SweepPoint> run_experiment(const ExperimentSpec& spec,
                                       int jobs = 1);

} // namespace femto
