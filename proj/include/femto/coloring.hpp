#pragma once

#include <cstddef>
#include <vector>

#include "femto/topology.hpp"

namespace femto {

/// Node-expanded interference graph: FAP l appears as demands[l] mutually
/// adjacent nodes, and nodes of interfering FAPs are fully interconnected.
struct ExpandedGraph {
    int n_faps = 0;
    std::vector<int> owner;                  // node -> FAP index
    std::vector<std::vector<int>> fap_nodes; // FAP -> node ids, ascending
    std::vector<std::vector<int>> adj;       // sorted neighbor lists
    std::size_t edge_count = 0;

    int n() const { return static_cast<int>(owner.size()); }
    bool adjacent(int a, int b) const;
};

/// Partial proper coloring; kUncolored marks nodes that received no color.
struct Coloring {
    static constexpr int kUncolored = -1;

    std::vector<int> color; // per node, in [0, palette) or kUncolored

    int n_colored() const;
    int n_colors_used() const; // distinct colors present
};

/// Per-FAP granted PRB indices (one PRB per color), sorted ascending.
struct PRBAssignment {
    std::vector<std::vector<int>> prbs;
};

/// Builds the expanded graph. Node ids interleave FAPs round-robin (round r
/// adds one node for every FAP whose demand exceeds r) so that no FAP's
/// clique monopolizes the early coloring decisions.
ExpandedGraph expand_graph(const InterferenceGraph& g,
                           const std::vector<int>& demands);

/// Saturation-order greedy coloring. Picks the uncolored node with the most
/// distinctly-colored neighbors (ties: higher degree, then lower index) and
/// gives it the smallest palette color absent from its neighborhood. Nodes
/// whose neighbors exhaust the palette stay uncolored.
Coloring dsatur_color(const ExpandedGraph& g, int palette);

/// Breadth-first greedy alternative: traverses each component from its
/// lowest-index node, coloring nodes in visit order with the smallest
/// available palette color. Linear in nodes plus edges.
Coloring greedy_bfs_color(const ExpandedGraph& g, int palette);

/// Exact chromatic number by branch and bound. Exhaustive search keeps this
/// honest only for tiny graphs; more than 12 nodes is refused.
int chromatic_oracle(const ExpandedGraph& g);

/// True when no edge joins two nodes of the same color.
bool is_proper(const ExpandedGraph& g, const Coloring& c);

/// Collects each FAP's node colors into its PRB set. Rejects improper
/// colorings.
PRBAssignment assignment_from_coloring(const ExpandedGraph& g,
                                       const Coloring& c);

} // namespace femto
