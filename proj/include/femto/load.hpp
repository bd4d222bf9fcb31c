#pragma once

#include <optional>
#include <vector>

#include "femto/config.hpp"

namespace femto {

/// One served user as seen by its FAP: demanded rate and average link gain.
struct UserDemand {
    double rate_bps = 0.0;
    double avg_gain = 0.0;
};

/// Result of the per-FAP load estimate.
struct LoadEstimate {
    std::vector<double> w; // fractional subchannels per user
    std::vector<double> p; // transmit power per user, watts
    double n_l = 0.0;      // total fractional demand, sum of w
    bool feasible = true;  // false when some user saturates the cap
    int n_l_int = 0;       // integral demand handed to the coloring phase
};

/// Rate of one user granted w fractional subchannels and power p:
///   w * bw * log2(1 + p * h / (w * sigma^2 * gap)),
/// extended continuously to 0 at w = 0.
double rate_given(double w, double p_w, double gain, const SystemConfig& cfg);

/// Smallest w with rate_given(w, p, h) >= demand, by bisection to relative
/// 1e-9. Empty when the demand exceeds the large-w rate limit or the
/// solution would exceed the cap of n_prbs_femto subchannels.
std::optional<double> min_subchannels(double p_w, const UserDemand& u,
                                      const SystemConfig& cfg);

/// Minimizes the total fractional subchannel count needed to meet every
/// served user's demand under the FAP power budget. Rate constraints are
/// tight at the returned point and the budget is fully used. When no power
/// split can serve all users within the per-user cap, returns
/// feasible = false with every saturated user pinned at the cap.
LoadEstimate estimate_load(const std::vector<UserDemand>& users, double p_max_w,
                           const SystemConfig& cfg);

/// Integral PRB demand for the coloring phase: min(ceil(n_l), n_prbs_femto).
int integer_demand(double n_l, int n_prbs_femto);

} // namespace femto
