#include "femto/allocation.hpp"

#include <cmath>
#include <stdexcept>

#include "femto/lp.hpp"

namespace femto {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

} // namespace

RateMatrix per_prb_rates(const Matrix& gains, int n_prbs, double p_max_w,
                         const SystemConfig& cfg)
{
    if (n_prbs < 0)
        throw std::invalid_argument("per_prb_rates: negative PRB count");
    if (n_prbs == 0)
        return Matrix(gains.rows(), 0);
    if (gains.cols() != static_cast<std::size_t>(n_prbs))
        throw std::invalid_argument("per_prb_rates: gain columns must match "
                                    "the PRB count");

    const double p_n = p_max_w / static_cast<double>(n_prbs);
    const double inv_noise = 1.0 / (cfg.noise_power_w() * cfg.snr_gap);
    const double bw = cfg.noise.prb_bandwidth_hz;

    Matrix r(gains.rows(), gains.cols());
    for (std::size_t k = 0; k < gains.rows(); ++k)
        for (std::size_t n = 0; n < gains.cols(); ++n) {
            double g = gains(k, n);
            if (!(g >= 0.0) || !std::isfinite(g))
                throw std::domain_error("per_prb_rates: gains must be "
                                        "finite and nonnegative");
            r(k, n) = bw * std::log1p(p_n * g * inv_noise) / kLn2;
        }
    return r;
}

Allocation maxmin_allocate(const RateMatrix& r,
                           const std::vector<double>& demands_bps)
{
    const std::size_t n_users = r.rows();
    const std::size_t n_prbs = r.cols();
    if (n_users == 0)
        throw std::invalid_argument("maxmin_allocate: no users");
    if (demands_bps.size() != n_users)
        throw std::invalid_argument("maxmin_allocate: one demand per user "
                                    "required");
    for (double d : demands_bps)
        if (!(d > 0.0) || !std::isfinite(d))
            throw std::domain_error("maxmin_allocate: demands must be "
                                    "positive and finite");

    Allocation out;
    if (n_prbs == 0) {
        out.c = Matrix(n_users, 0);
        out.t = 0.0;
        return out;
    }

    if (n_users == 1) {
        out.c = Matrix(1, n_prbs);
        double total = 0.0;
        for (std::size_t n = 0; n < n_prbs; ++n) {
            out.c(0, n) = 1.0;
            total += r(0, n);
        }
        out.t = total / demands_bps[0];
        return out;
    }

    double max_rate = 0.0;
    for (std::size_t k = 0; k < n_users; ++k)
        for (std::size_t n = 0; n < n_prbs; ++n)
            max_rate = std::max(max_rate, r(k, n));
    if (max_rate == 0.0) {
        // Deep outage: every split is optimal, return the uniform one.
        out.c = Matrix(n_users, n_prbs);
        for (std::size_t k = 0; k < n_users; ++k)
            for (std::size_t n = 0; n < n_prbs; ++n)
                out.c(k, n) = 1.0 / static_cast<double>(n_users);
        out.t = 0.0;
        return out;
    }

    // Reduced LP over x = (c for users 0..K-2, t): the last user's
    // fractions are 1 - (column sum of the others), which keeps every
    // right-hand side nonnegative. Rate rows are normalized by demand.
    //   row k < K-1:  -sum_n x_{k,n} q_{k,n} + t <= 0
    //   row K-1:       sum_n sum_k x_{k,n} q_{K-1,n} + t <= sum_n q_{K-1,n}
    //   row per PRB:   sum_k x_{k,n} <= 1
    const std::size_t kk = n_users - 1; // eliminated user
    const std::size_t n_vars = kk * n_prbs + 1;
    const std::size_t n_rows = n_users + n_prbs;
    const std::size_t t_col = n_vars - 1;
    auto var = [&](std::size_t k, std::size_t n) { return k * n_prbs + n; };

    Matrix a(n_rows, n_vars, 0.0);
    std::vector<double> b(n_rows, 0.0);
    std::vector<double> objv(n_vars, 0.0);
    objv[t_col] = 1.0;

    for (std::size_t k = 0; k < kk; ++k) {
        for (std::size_t n = 0; n < n_prbs; ++n)
            a(k, var(k, n)) = -r(k, n) / demands_bps[k];
        a(k, t_col) = 1.0;
        b[k] = 0.0;
    }
    double last_total = 0.0;
    for (std::size_t n = 0; n < n_prbs; ++n) {
        double q = r(kk, n) / demands_bps[kk];
        last_total += q;
        for (std::size_t k = 0; k < kk; ++k)
            a(kk, var(k, n)) = q;
    }
    a(kk, t_col) = 1.0;
    b[kk] = last_total;
    for (std::size_t n = 0; n < n_prbs; ++n) {
        for (std::size_t k = 0; k < kk; ++k)
            a(n_users + n, var(k, n)) = 1.0;
        b[n_users + n] = 1.0;
    }

    LpResult sol = solve_lp(a, b, objv);
    if (!sol.bounded)
        throw std::runtime_error("maxmin_allocate: unbounded program");

    out.c = Matrix(n_users, n_prbs);
    for (std::size_t n = 0; n < n_prbs; ++n) {
        double rest = 0.0;
        for (std::size_t k = 0; k < kk; ++k) {
            double v = std::max(0.0, sol.x[var(k, n)]);
            out.c(k, n) = v;
            rest += v;
        }
        out.c(kk, n) = std::max(0.0, 1.0 - rest);
        double total = rest + out.c(kk, n);
        for (std::size_t k = 0; k < n_users; ++k)
            out.c(k, n) /= total;
    }
    out.t = sol.objective;
    return out;
}

std::vector<double> achieved_rates(const Allocation& a, const RateMatrix& r)
{
    if (a.c.rows() != r.rows() || a.c.cols() != r.cols())
        throw std::invalid_argument("achieved_rates: allocation and rates "
                                    "disagree in shape");
    std::vector<double> rates(r.rows(), 0.0);
    for (std::size_t k = 0; k < r.rows(); ++k) {
        double sum = 0.0;
        for (std::size_t n = 0; n < r.cols(); ++n)
            sum += a.c(k, n) * r(k, n);
        rates[k] = sum;
    }
    return rates;
}

} // namespace femto
