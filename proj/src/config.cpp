#include "femto/config.hpp"

#include "femto/channel.hpp"

namespace femto {

namespace {

void require(bool ok, const std::string& msg)
{
    if (!ok)
        throw ConfigError(msg);
}

} // namespace

void PropagationParams::validate() const
{
    require(d_in_min_m >= 0.0, "d_in_min_m: must be >= 0");
    require(d_in_min_m <= d_in_max_m, "d_in_max_m: must be >= d_in_min_m");
    require(wall_loss_db >= 0.0, "wall_loss_db: must be >= 0");
    require(window_loss_db >= 0.0, "window_loss_db: must be >= 0");
    require(shadow_sigma_db >= 0.0, "shadow_sigma_db: must be >= 0");
    require(min_distance_m > 0.0, "min_distance_m: must be > 0");
}

void NoiseParams::validate() const
{
    require(prb_bandwidth_hz > 0.0, "prb_bandwidth_hz: must be > 0");
}

std::string to_string(EvalMode m)
{
    return m == EvalMode::ideal ? "ideal" : "sinr";
}

std::string to_string(ColoringStrategy s)
{
    return s == ColoringStrategy::dsatur ? "dsatur" : "bfs";
}

EvalMode eval_mode_from_string(const std::string& s)
{
    if (s == "ideal")
        return EvalMode::ideal;
    if (s == "sinr")
        return EvalMode::sinr;
    throw ConfigError("eval_mode: expected 'ideal' or 'sinr', got '" + s + "'");
}

ColoringStrategy coloring_strategy_from_string(const std::string& s)
{
    if (s == "dsatur")
        return ColoringStrategy::dsatur;
    if (s == "bfs")
        return ColoringStrategy::bfs;
    throw ConfigError("coloring_strategy: expected 'dsatur' or 'bfs', got '" +
                      s + "'");
}

double SystemConfig::p_max_w() const { return dbm_to_watts(p_max_dbm); }

double SystemConfig::noise_power_w() const
{
    return femto::noise_power_w(noise);
}

void SystemConfig::validate() const
{
    require(cell_radius_m > 0.0, "cell_radius_m: must be > 0");
    require(coverage_radius_m > 0.0, "coverage_radius_m: must be > 0");
    require(fap_density_per_m2 > 0.0, "fap_density_per_m2: must be > 0");
    require(user_density_multiplier > 0.0,
            "user_density_multiplier: must be > 0");
    require(n_prbs_total >= 1, "n_prbs_total: must be >= 1");
    require(n_prbs_femto >= 1, "n_prbs_femto: must be >= 1");
    require(n_prbs_femto <= n_prbs_total,
            "n_prbs_femto: must be <= n_prbs_total");
    require(demand_bps > 0.0, "demand_bps: must be > 0");
    require(snr_gap >= 1.0, "snr_gap: must be >= 1");
    require(n_topologies >= 1, "n_topologies: must be >= 1");
    require(n_channel_draws >= 1, "n_channel_draws: must be >= 1");
    require(outage_fraction > 0.0 && outage_fraction <= 1.0,
            "outage_fraction: must be in (0, 1]");
    propagation.validate();
    noise.validate();
}

} // namespace femto
