#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace femto {

/// Raised on invalid configuration values or unparsable config input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Indoor/outdoor propagation parameters.
struct PropagationParams {
    double d_in_min_m = 1.0;      // FAP to external wall, lower bound
    double d_in_max_m = 5.0;      // FAP to external wall, upper bound
    double wall_loss_db = 10.0;   // penetration loss through a wall
    double window_loss_db = 3.0;  // penetration loss through a window
    double shadow_sigma_db = 10.0;
    double min_distance_m = 1.0;  // distances below are clamped

    void validate() const;
};

struct NoiseParams {
    double psd_dbm_per_hz = -174.0;
    double noise_figure_db = 10.0;
    double prb_bandwidth_hz = 180e3;

    void validate() const;
};

enum class EvalMode { ideal, sinr };
enum class ColoringStrategy { dsatur, bfs };

std::string to_string(EvalMode m);
std::string to_string(ColoringStrategy s);
EvalMode eval_mode_from_string(const std::string& s);
ColoringStrategy coloring_strategy_from_string(const std::string& s);

/// All scalar parameters of one simulated scenario.
struct SystemConfig {
    double cell_radius_m = 100.0;
    double coverage_radius_m = 15.0; // FAP coverage radius d
    double fap_density_per_m2 = 0.01;
    double user_density_multiplier = 4.0;
    int n_prbs_total = 100;
    int n_prbs_femto = 50; // PRBs available to the femto tier
    double p_max_dbm = 20.0;
    double demand_bps = 1e6; // per-user rate demand

    PropagationParams propagation{};
    NoiseParams noise{};
    double snr_gap = 1.0; // 1 = exact Shannon capacity

    int n_topologies = 100;
    int n_channel_draws = 10;
    double outage_fraction = 0.8;
    EvalMode eval_mode = EvalMode::ideal;
    ColoringStrategy coloring_strategy = ColoringStrategy::dsatur;
    std::uint64_t master_seed = 1;

    double p_max_w() const;
    /// Per-PRB thermal noise power in watts.
    double noise_power_w() const;

    void validate() const; // throws ConfigError naming the offending key
};

} // namespace femto
