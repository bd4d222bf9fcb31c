#include "femto/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace femto {

namespace {

constexpr double kCostEps = 1e-9;  // reduced cost considered improving
constexpr double kPivotEps = 1e-9; // smallest usable pivot element

} // namespace

LpResult solve_lp(const Matrix& a, const std::vector<double>& b,
                  const std::vector<double>& obj)
{
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m || obj.size() != n)
        throw std::invalid_argument("solve_lp: dimension mismatch");
    for (double bi : b)
        if (!(bi >= 0.0))
            throw std::invalid_argument("solve_lp: negative right-hand side");

    // Tableau rows 0..m-1 carry the constraints with slack identity, row m
    // carries z - obj.x = 0. Column layout: n structurals, m slacks, rhs.
    const std::size_t width = n + m + 1;
    std::vector<double> t((m + 1) * width, 0.0);
    auto cell = [&](std::size_t r, std::size_t c) -> double& {
        return t[r * width + c];
    };

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            cell(i, j) = a(i, j);
        cell(i, n + i) = 1.0;
        cell(i, width - 1) = b[i];
    }
    for (std::size_t j = 0; j < n; ++j)
        cell(m, j) = -obj[j];

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i)
        basis[i] = n + i;

    LpResult out;
    const long bland_after = 20 * static_cast<long>(m + n);
    const long max_iters = 10000 + 2000 * static_cast<long>(m + n);

    for (long iter = 0;; ++iter) {
        if (iter > max_iters)
            throw std::runtime_error("solve_lp: pivot limit exceeded");
        const bool bland = iter >= bland_after;

        std::size_t enter = width; // sentinel: optimal
        double best = -kCostEps;
        for (std::size_t j = 0; j + 1 < width; ++j) {
            double rc = cell(m, j);
            if (rc < best) {
                enter = j;
                best = rc;
                if (bland)
                    break; // first improving column
            }
        }
        if (enter == width)
            break;

        std::size_t leave = m; // sentinel: unbounded
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double piv = cell(i, enter);
            if (piv <= kPivotEps)
                continue;
            double ratio = cell(i, width - 1) / piv;
            if (leave == m || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            out.bounded = false;
            return out;
        }

        double piv = cell(leave, enter);
        for (std::size_t j = 0; j < width; ++j)
            cell(leave, j) /= piv;
        cell(leave, enter) = 1.0;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == leave)
                continue;
            double f = cell(r, enter);
            if (f == 0.0)
                continue;
            for (std::size_t j = 0; j < width; ++j)
                cell(r, j) -= f * cell(leave, j);
            cell(r, enter) = 0.0;
        }
        basis[leave] = enter;
    }

    out.objective = cell(m, width - 1);
    out.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n)
            out.x[basis[i]] = cell(i, width - 1);
    out.duals.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        out.duals[i] = cell(m, n + i);
    return out;
}

} // namespace femto
