#include "femto/load.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace femto {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr int kInnerIters = 80;  // relative width < 1e-9 over the bracket
constexpr int kOuterIters = 200; // multiplier bisection, relative < 1e-7

struct UserCurve {
    double demand_bps;
    double inv_gain_noise; // sigma^2 * gap / h, the inverse effective gain
};

// Power needed to serve demand R on exactly w subchannels with the rate
// constraint tight: P(w) = (w * sigma^2 * gap / h) * (2^(R/(bw*w)) - 1).
// Decreasing and convex in w.
double power_for(const UserCurve& u, double bw, double w)
{
    double t = u.demand_bps / (bw * w);
    return w * u.inv_gain_noise * std::expm1(t * kLn2);
}

// dP/dw = (sigma^2 gap / h) * (2^t - 1 - t ln2 * 2^t), t = R/(bw*w).
// Negative, increasing toward 0 as w grows.
double dpower_dw(const UserCurve& u, double bw, double w)
{
    double tl = u.demand_bps / (bw * w) * kLn2;
    double e = std::expm1(tl);
    if (!std::isfinite(e))
        return -std::numeric_limits<double>::infinity();
    return u.inv_gain_noise * (e - tl * (1.0 + e));
}

// Smallest w on (0, w_cap] with dP/dw = -slope, or w_cap when the curve is
// still steeper than -slope at the cap.
double w_for_slope(const UserCurve& u, double bw, double w_cap, double slope)
{
    if (dpower_dw(u, bw, w_cap) <= -slope)
        return w_cap;
    double lo = w_cap;
    while (dpower_dw(u, bw, lo) > -slope) {
        lo *= 0.5;
        if (lo < w_cap * 1e-60)
            return lo; // demand effectively zero at this slope scale
    }
    double hi = std::min(lo * 2.0, w_cap);
    for (int i = 0; i < kInnerIters; ++i) {
        double mid = std::sqrt(lo * hi); // log-space midpoint
        if (dpower_dw(u, bw, mid) > -slope)
            hi = mid;
        else
            lo = mid;
    }
    return std::sqrt(lo * hi);
}

} // namespace

double rate_given(double w, double p_w, double gain, const SystemConfig& cfg)
{
    if (w < 0.0 || p_w < 0.0)
        throw std::domain_error("rate_given: negative subchannels or power");
    if (w == 0.0)
        return 0.0;
    double snr = p_w * gain / (w * cfg.noise_power_w() * cfg.snr_gap);
    return w * cfg.noise.prb_bandwidth_hz * std::log1p(snr) / kLn2;
}

std::optional<double> min_subchannels(double p_w, const UserDemand& u,
                                      const SystemConfig& cfg)
{
    if (p_w < 0.0)
        throw std::domain_error("min_subchannels: negative power");
    const double w_cap = static_cast<double>(cfg.n_prbs_femto);
    // rate_given is increasing in w, so the cap decides feasibility; this
    // also covers the large-w asymptote p*h*bw/(sigma^2*gap*ln2).
    if (rate_given(w_cap, p_w, u.avg_gain, cfg) < u.rate_bps)
        return std::nullopt;
    double lo = w_cap * 1e-15;
    double hi = w_cap;
    for (int i = 0; i < kInnerIters; ++i) {
        double mid = std::sqrt(lo * hi);
        if (rate_given(mid, p_w, u.avg_gain, cfg) >= u.rate_bps)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

LoadEstimate estimate_load(const std::vector<UserDemand>& users, double p_max_w,
                           const SystemConfig& cfg)
{
    if (users.empty())
        throw std::invalid_argument("estimate_load: no users");
    if (p_max_w <= 0.0)
        throw std::domain_error("estimate_load: power budget must be positive");

    const double bw = cfg.noise.prb_bandwidth_hz;
    const double sigma2_gap = cfg.noise_power_w() * cfg.snr_gap;
    const double w_cap = static_cast<double>(cfg.n_prbs_femto);
    const std::size_t n = users.size();

    std::vector<UserCurve> curves(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (users[k].rate_bps <= 0.0 || users[k].avg_gain <= 0.0)
            throw std::domain_error("estimate_load: demands and gains must be "
                                    "positive");
        curves[k] = {users[k].rate_bps, sigma2_gap / users[k].avg_gain};
    }

    LoadEstimate out;
    out.w.resize(n);
    out.p.resize(n);

    // Power each user needs when pinned at the cap; if even that exhausts
    // the budget, no split serves everyone.
    double cap_power_total = 0.0;
    std::vector<double> cap_power(n);
    for (std::size_t k = 0; k < n; ++k) {
        cap_power[k] = power_for(curves[k], bw, w_cap);
        cap_power_total += cap_power[k];
    }

    if (!(cap_power_total <= p_max_w)) {
        // Best effort: everyone saturates; scale the cap powers onto the
        // budget so the reported split is still meaningful.
        out.feasible = false;
        double scale = std::isfinite(cap_power_total)
                           ? p_max_w / cap_power_total
                           : 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            out.w[k] = w_cap;
            out.p[k] = std::isfinite(cap_power[k]) ? cap_power[k] * scale
                                                   : p_max_w / static_cast<double>(n);
        }
        out.n_l = w_cap * static_cast<double>(n);
        out.n_l_int = cfg.n_prbs_femto;
        return out;
    }

    // KKT system: every interior user sits where its power-vs-subchannel
    // tradeoff has common slope -nu; total power exactly meets the budget.
    auto total_power_at = [&](double nu, std::vector<double>& w_buf) {
        double total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            w_buf[k] = w_for_slope(curves[k], bw, w_cap, nu);
            total += power_for(curves[k], bw, w_buf[k]);
        }
        return total;
    };

    std::vector<double> w_buf(n);
    double nu_lo = 1.0;
    while (total_power_at(nu_lo, w_buf) > p_max_w && nu_lo > 1e-280)
        nu_lo /= 8.0;
    double nu_hi = std::max(nu_lo, 1.0);
    while (total_power_at(nu_hi, w_buf) < p_max_w && nu_hi < 1e280)
        nu_hi *= 8.0;

    for (int i = 0; i < kOuterIters; ++i) {
        if ((nu_hi - nu_lo) <= 1e-9 * nu_hi)
            break;
        double mid = std::sqrt(nu_lo * nu_hi);
        if (total_power_at(mid, w_buf) > p_max_w)
            nu_hi = mid;
        else
            nu_lo = mid;
    }
    // Land on the feasible side of the budget.
    total_power_at(nu_lo, w_buf);

    out.n_l = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        out.w[k] = w_buf[k];
        out.p[k] = power_for(curves[k], bw, w_buf[k]);
        out.n_l += out.w[k];
    }
    out.feasible = true;
    out.n_l_int = integer_demand(out.n_l, cfg.n_prbs_femto);
    return out;
}

int integer_demand(double n_l, int n_prbs_femto)
{
    if (n_l < 0.0)
        throw std::domain_error("integer_demand: negative load");
    double c = std::ceil(n_l);
    if (c >= static_cast<double>(n_prbs_femto))
        return n_prbs_femto;
    return static_cast<int>(c);
}

} // namespace femto
