#include "femto/topology.hpp"

#include <algorithm>
#include <cmath>

namespace femto {

bool InterferenceGraph::adjacent(int i, int j) const
{
    const auto& a = adj[static_cast<std::size_t>(i)];
    return std::binary_search(a.begin(), a.end(), j);
}

namespace {

Point2 uniform_in_disk(double radius, RandomStream& rng)
{
    // Area-correct polar sampling.
    double r = radius * std::sqrt(rng.uniform());
    double theta = 2.0 * 3.14159265358979323846 * rng.uniform();
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace

Topology generate_topology(const SystemConfig& cfg, RandomStream& rng)
{
    double area = 3.14159265358979323846 * cfg.cell_radius_m * cfg.cell_radius_m;
    long n_faps = std::lround(cfg.fap_density_per_m2 * area);
    long n_users = std::lround(cfg.fap_density_per_m2 *
                               cfg.user_density_multiplier * area);
    if (n_faps < 1)
        throw ConfigError("fap_density_per_m2: FAP count rounds to zero for "
                          "this cell radius");

    Topology t;
    t.cell_radius_m = cfg.cell_radius_m;
    t.coverage_radius_m = cfg.coverage_radius_m;
    t.fap_positions.reserve(static_cast<std::size_t>(n_faps));
    for (long i = 0; i < n_faps; ++i)
        t.fap_positions.push_back(uniform_in_disk(cfg.cell_radius_m, rng));
    t.user_positions.reserve(static_cast<std::size_t>(n_users));
    for (long i = 0; i < n_users; ++i)
        t.user_positions.push_back(uniform_in_disk(cfg.cell_radius_m, rng));
    return t;
}

CellAssignment assign_users(const Topology& t, const Matrix& avg_gains)
{
    const int n_faps = t.n_faps();
    const int n_users = t.n_users();

    CellAssignment a;
    a.serving_fap.resize(static_cast<std::size_t>(n_users));
    a.served_users.resize(static_cast<std::size_t>(n_faps));

    for (int k = 0; k < n_users; ++k) {
        int best = 0;
        double best_gain = avg_gains(0, static_cast<std::size_t>(k));
        for (int l = 1; l < n_faps; ++l) {
            double g = avg_gains(static_cast<std::size_t>(l),
                                 static_cast<std::size_t>(k));
            if (g > best_gain) { // strict: ties keep the lowest index
                best_gain = g;
                best = l;
            }
        }
        a.serving_fap[static_cast<std::size_t>(k)] = best;
        a.served_users[static_cast<std::size_t>(best)].push_back(k);
    }
    return a;
}

InterferenceGraph build_interference_graph(const Topology& t)
{
    const int n = t.n_faps();
    InterferenceGraph g;
    g.n = n;
    g.adj.resize(static_cast<std::size_t>(n));
    const double limit = 2.0 * t.coverage_radius_m;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (distance(t.fap_positions[static_cast<std::size_t>(i)],
                         t.fap_positions[static_cast<std::size_t>(j)]) <=
                limit) {
                g.adj[static_cast<std::size_t>(i)].push_back(j);
                g.adj[static_cast<std::size_t>(j)].push_back(i);
                ++g.edge_count;
            }
        }
    }
    return g;
}

} // namespace femto
