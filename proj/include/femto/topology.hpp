#pragma once

#include <cmath>
#include <vector>

#include "femto/config.hpp"
#include "femto/matrix.hpp"
#include "femto/rng.hpp"

namespace femto {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Random FAP and user placement inside a circular cell.
struct Topology {
    double cell_radius_m = 0.0;
    double coverage_radius_m = 0.0; // FAP coverage radius d
    std::vector<Point2> fap_positions;
    std::vector<Point2> user_positions;

    int n_faps() const { return static_cast<int>(fap_positions.size()); }
    int n_users() const { return static_cast<int>(user_positions.size()); }
};

/// The partition of users onto serving FAPs.
struct CellAssignment {
    std::vector<int> serving_fap;            // per user
    std::vector<std::vector<int>> served_users; // per FAP, ascending user ids
};

/// Undirected simple graph over FAP indices.
struct InterferenceGraph {
    int n = 0;
    std::vector<std::vector<int>> adj; // sorted neighbor lists
    std::size_t edge_count = 0;

    bool adjacent(int i, int j) const;
};

/// Places round(density * cell area) FAPs and users uniformly in the cell
/// disk. Throws ConfigError when the FAP count rounds to zero.
Topology generate_topology(const SystemConfig& cfg, RandomStream& rng);

/// Connects each user to the FAP with the strongest average received power
/// (equivalently the largest average gain under a common transmit power).
/// Ties break toward the lowest FAP index.
CellAssignment assign_users(const Topology& t, const Matrix& avg_gains);

/// FAPs closer than twice the coverage radius are connected.
InterferenceGraph build_interference_graph(const Topology& t);

} // namespace femto
