#pragma once

#include <vector>

#include "femto/matrix.hpp"

namespace femto {

struct LpResult {
    bool bounded = true;
    double objective = 0.0;
    std::vector<double> x;     // primal values, one per variable
    std::vector<double> duals; // one per constraint row, >= 0 at optimum
};

/// Maximizes obj . x subject to a x <= b and x >= 0, where every entry of b
/// is nonnegative so the origin is a feasible start. Dense tableau simplex:
/// steepest reduced cost, switching to Bland's rule if pivoting stalls.
LpResult solve_lp(const Matrix& a, const std::vector<double>& b,
                  const std::vector<double>& obj);

} // namespace femto
