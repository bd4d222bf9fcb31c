#include "femto/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace femto {

double path_loss_db(double d_in_m, double d_m, double penetration_db,
                    double shadow_db)
{
    if (d_in_m <= 0.0)
        throw std::domain_error("path_loss_db: d_in must be positive");
    if (d_m <= 0.0)
        throw std::domain_error("path_loss_db: distance must be positive");
    return 38.46 + 20.0 * std::log10(d_in_m) + 37.6 * std::log10(d_m) +
           penetration_db + shadow_db;
}

LinkShadowState draw_link_shadow(const PropagationParams& p, RandomStream& rng)
{
    LinkShadowState s;
    s.d_in_m = rng.uniform(p.d_in_min_m, p.d_in_max_m);
    s.penetration_db = rng.coin() ? p.wall_loss_db : p.window_loss_db;
    s.shadow_db = rng.normal(0.0, p.shadow_sigma_db);
    return s;
}

double average_gain(const PropagationParams& p, const LinkShadowState& s,
                    double distance_m)
{
    double d = std::max(distance_m, p.min_distance_m);
    double pl = path_loss_db(s.d_in_m, d, s.penetration_db, s.shadow_db);
    return db_to_linear(-pl);
}

std::vector<double> draw_fading(int n_prbs, RandomStream& rng)
{
    if (n_prbs < 0)
        throw std::invalid_argument("draw_fading: negative PRB count");
    std::vector<double> f(static_cast<std::size_t>(n_prbs));
    for (double& x : f)
        x = rng.exponential_unit_mean();
    return f;
}

double noise_power_w(const NoiseParams& n)
{
    double dbm = n.psd_dbm_per_hz + 10.0 * std::log10(n.prb_bandwidth_hz) +
                 n.noise_figure_db;
    return dbm_to_watts(dbm);
}

} // namespace femto
