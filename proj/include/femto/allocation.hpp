#pragma once

#include <vector>

#include "femto/config.hpp"
#include "femto/matrix.hpp"

namespace femto {

/// Achievable full-time rate per (user, granted PRB).
using RateMatrix = Matrix;

/// Time-share solution for one FAP: c(k, n) is the fraction of PRB n given
/// to user k, t the max-min normalized rate achieved.
struct Allocation {
    Matrix c;
    double t = 0.0;
};

/// Rates under equal power splitting: each granted PRB carries
/// p_max / n_prbs watts, so r(k, n) = bw * log2(1 + p h / (noise * gap)).
/// n_prbs = 0 yields an empty matrix.
RateMatrix per_prb_rates(const Matrix& gains, int n_prbs, double p_max_w,
                         const SystemConfig& cfg);

/// Maximizes the minimum of (sum_n c(k,n) r(k,n)) / demand_k over users,
/// subject to each PRB being fully shared: sum_k c(k,n) = 1, c >= 0.
/// Column sums land on 1 exactly; t is within relative 1e-6 of the LP
/// optimum. All-zero rates give t = 0 with a uniform split.
Allocation maxmin_allocate(const RateMatrix& r,
                           const std::vector<double>& demands_bps);

/// Per-user delivered rate sum_n c(k,n) r(k,n).
std::vector<double> achieved_rates(const Allocation& a, const RateMatrix& r);

} // namespace femto
