#pragma once

#include <vector>

#include "femto/config.hpp"
#include "femto/rng.hpp"

namespace femto {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// Large-scale state of one FAP-user link, drawn once per topology and held
/// fixed across PRBs and channel realizations.
struct LinkShadowState {
    double d_in_m = 1.0;
    double penetration_db = 0.0; // wall or window loss
    double shadow_db = 0.0;      // log-normal shadowing, Gaussian in dB
};

/// Indoor-to-outdoor path loss in dB:
///   38.46 + 20 log10(d_in) + 37.6 log10(d) + L + Ls.
/// Throws std::domain_error for non-positive distances.
double path_loss_db(double d_in_m, double d_m, double penetration_db,
                    double shadow_db);

LinkShadowState draw_link_shadow(const PropagationParams& p, RandomStream& rng);

/// Average linear power gain of a link; excludes fast fading (unit mean).
/// Distances below p.min_distance_m are clamped.
double average_gain(const PropagationParams& p, const LinkShadowState& s,
                    double distance_m);

/// n_prbs independent unit-mean exponential fading factors (Rayleigh power).
std::vector<double> draw_fading(int n_prbs, RandomStream& rng);

/// Thermal noise power over one PRB in watts.
double noise_power_w(const NoiseParams& n);

} // namespace femto
