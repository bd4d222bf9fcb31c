#pragma once

#include <cstdint>
#include <vector>

#include "femto/allocation.hpp"
#include "femto/coloring.hpp"
#include "femto/config.hpp"
#include "femto/load.hpp"
#include "femto/topology.hpp"

namespace femto {

struct TrialMetrics {
    std::vector<double> user_rates; // bits/second, indexed by user
    double outage_rate = 0.0; // fraction below outage_fraction * demand
    double min_rate = 0.0;
    double max_rate = 0.0;
};

/// Every intermediate product of one trial, for audit dumps and tests.
struct TrialRecord {
    Topology topo;
    CellAssignment assignment;
    std::vector<LoadEstimate> loads; // per FAP; empty FAPs get a zero entry
    std::vector<int> demands;        // integer PRB demand per FAP
    std::vector<int> node_owner;     // expanded-graph node -> FAP
    Coloring coloring;               // per expanded-graph node
    PRBAssignment prbs;
    std::vector<Allocation> allocations; // per FAP
    TrialMetrics metrics;
};

/// Aggregated statistics for one demand sweep point.
struct SweepPoint {
    double demand_bps = 0.0;
    double outage_mean = 0.0;
    double outage_stderr = 0.0;
    double min_rate_mean = 0.0;
    double min_rate_stderr = 0.0;
    double max_rate_mean = 0.0;
    double max_rate_stderr = 0.0;
    int n_trials = 0;
};

/// Runs the full pipeline once: placement, link states, cell selection,
/// load estimation, graph expansion and coloring, PRB grants, fading,
/// max-min time shares, per-user rates. Deterministic in both seeds.
TrialRecord run_trial_record(const SystemConfig& cfg,
                             std::uint64_t topology_seed,
                             std::uint64_t channel_seed);

TrialMetrics run_trial(const SystemConfig& cfg, std::uint64_t topology_seed,
                       std::uint64_t channel_seed);

/// Re-evaluates user rates with co-channel interference from every other
/// FAP transmitting on a shared PRB, keeping the time fractions fixed.
/// gains_per_fap[l](k, n) is the instantaneous gain from FAP l to user k
/// on PRB n over the full femto band.
std::vector<double> evaluate_rates_sinr(
    const CellAssignment& ca, const PRBAssignment& pa,
    const std::vector<Allocation>& allocations,
    const std::vector<Matrix>& gains_per_fap, const SystemConfig& cfg);

/// Mean and standard error of outage and of the per-trial rate extremes.
SweepPoint aggregate(const std::vector<TrialMetrics>& trials,
                     const SystemConfig& cfg);

/// Runs cfg.n_topologies x cfg.n_channel_draws trials for the configured
/// demand, spread over `jobs` worker threads (0 picks the hardware count).
/// The result does not depend on the thread count.
SweepPoint run_point(const SystemConfig& cfg, int jobs = 1);

} // namespace femto
