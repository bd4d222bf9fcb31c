#include "femto/coloring.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace femto {

bool ExpandedGraph::adjacent(int a, int b) const
{
    const auto& list = adj[static_cast<std::size_t>(a)];
    return std::binary_search(list.begin(), list.end(), b);
}

int Coloring::n_colored() const
{
    return static_cast<int>(std::count_if(color.begin(), color.end(),
                                          [](int c) { return c != kUncolored; }));
}

int Coloring::n_colors_used() const
{
    std::vector<int> used;
    for (int c : color)
        if (c != kUncolored)
            used.push_back(c);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    return static_cast<int>(used.size());
}

ExpandedGraph expand_graph(const InterferenceGraph& g,
                           const std::vector<int>& demands)
{
    if (demands.size() != static_cast<std::size_t>(g.n))
        throw std::invalid_argument("expand_graph: one demand per FAP required");
    for (int d : demands)
        if (d < 0)
            throw std::invalid_argument("expand_graph: negative demand");

    ExpandedGraph eg;
    eg.n_faps = g.n;
    eg.fap_nodes.resize(static_cast<std::size_t>(g.n));

    int max_demand = 0;
    for (int d : demands)
        max_demand = std::max(max_demand, d);

    // Round-robin node ids: round r contributes one node per FAP still
    // short of its demand.
    for (int r = 0; r < max_demand; ++r) {
        for (int l = 0; l < g.n; ++l) {
            if (demands[static_cast<std::size_t>(l)] > r) {
                eg.fap_nodes[static_cast<std::size_t>(l)].push_back(eg.n());
                eg.owner.push_back(l);
            }
        }
    }

    const int n = eg.n();
    eg.adj.resize(static_cast<std::size_t>(n));

    // Reserve exact degrees: clique peers plus every node of each
    // interfering FAP.
    for (int v = 0; v < n; ++v) {
        int l = eg.owner[static_cast<std::size_t>(v)];
        std::size_t deg =
            eg.fap_nodes[static_cast<std::size_t>(l)].size() - 1;
        for (int m : g.adj[static_cast<std::size_t>(l)])
            deg += eg.fap_nodes[static_cast<std::size_t>(m)].size();
        eg.adj[static_cast<std::size_t>(v)].reserve(deg);
    }

    for (int l = 0; l < g.n; ++l) {
        const auto& mine = eg.fap_nodes[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < mine.size(); ++i)
            for (std::size_t j = i + 1; j < mine.size(); ++j) {
                eg.adj[static_cast<std::size_t>(mine[i])].push_back(mine[j]);
                eg.adj[static_cast<std::size_t>(mine[j])].push_back(mine[i]);
                ++eg.edge_count;
            }
        for (int m : g.adj[static_cast<std::size_t>(l)]) {
            if (m <= l)
                continue; // each FAP pair handled once
            const auto& theirs = eg.fap_nodes[static_cast<std::size_t>(m)];
            for (int a : mine)
                for (int b : theirs) {
                    eg.adj[static_cast<std::size_t>(a)].push_back(b);
                    eg.adj[static_cast<std::size_t>(b)].push_back(a);
                    ++eg.edge_count;
                }
        }
    }

    for (auto& list : eg.adj)
        std::sort(list.begin(), list.end());
    return eg;
}

Coloring dsatur_color(const ExpandedGraph& g, int palette)
{
    if (palette < 1)
        throw std::invalid_argument("dsatur_color: palette must be positive");

    const int n = g.n();
    Coloring out;
    out.color.assign(static_cast<std::size_t>(n), Coloring::kUncolored);

    // seen[v * palette + c] marks color c present in v's neighborhood;
    // sat[v] counts the distinct marks. decided[v] covers colored and
    // permanently blocked nodes alike.
    std::vector<char> seen(static_cast<std::size_t>(n) *
                               static_cast<std::size_t>(palette),
                           0);
    std::vector<int> sat(static_cast<std::size_t>(n), 0);
    std::vector<char> decided(static_cast<std::size_t>(n), 0);

    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v) {
            if (decided[static_cast<std::size_t>(v)])
                continue;
            if (best < 0)
                best = v;
            else if (sat[static_cast<std::size_t>(v)] >
                     sat[static_cast<std::size_t>(best)])
                best = v;
            else if (sat[static_cast<std::size_t>(v)] ==
                         sat[static_cast<std::size_t>(best)] &&
                     g.adj[static_cast<std::size_t>(v)].size() >
                         g.adj[static_cast<std::size_t>(best)].size())
                best = v;
        }
        decided[static_cast<std::size_t>(best)] = 1;

        const char* mask = &seen[static_cast<std::size_t>(best) *
                                 static_cast<std::size_t>(palette)];
        int chosen = Coloring::kUncolored;
        for (int c = 0; c < palette; ++c)
            if (!mask[c]) {
                chosen = c;
                break;
            }
        if (chosen == Coloring::kUncolored)
            continue; // palette exhausted around this node

        out.color[static_cast<std::size_t>(best)] = chosen;
        for (int u : g.adj[static_cast<std::size_t>(best)]) {
            if (decided[static_cast<std::size_t>(u)])
                continue;
            char& mark = seen[static_cast<std::size_t>(u) *
                                  static_cast<std::size_t>(palette) +
                              static_cast<std::size_t>(chosen)];
            if (!mark) {
                mark = 1;
                ++sat[static_cast<std::size_t>(u)];
            }
        }
    }
    return out;
}

Coloring greedy_bfs_color(const ExpandedGraph& g, int palette)
{
    if (palette < 1)
        throw std::invalid_argument("greedy_bfs_color: palette must be positive");

    const int n = g.n();
    Coloring out;
    out.color.assign(static_cast<std::size_t>(n), Coloring::kUncolored);

    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<char> taken(static_cast<std::size_t>(palette), 0);
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(n));

    for (int start = 0; start < n; ++start) {
        if (visited[static_cast<std::size_t>(start)])
            continue;
        queue.clear();
        queue.push_back(start);
        visited[static_cast<std::size_t>(start)] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            const auto& nbrs = g.adj[static_cast<std::size_t>(v)];

            for (int u : nbrs) {
                int cu = out.color[static_cast<std::size_t>(u)];
                if (cu != Coloring::kUncolored)
                    taken[static_cast<std::size_t>(cu)] = 1;
            }
            for (int c = 0; c < palette; ++c)
                if (!taken[static_cast<std::size_t>(c)]) {
                    out.color[static_cast<std::size_t>(v)] = c;
                    break;
                }
            for (int u : nbrs) {
                int cu = out.color[static_cast<std::size_t>(u)];
                if (cu != Coloring::kUncolored)
                    taken[static_cast<std::size_t>(cu)] = 0;
            }

            for (int u : nbrs)
                if (!visited[static_cast<std::size_t>(u)]) {
                    visited[static_cast<std::size_t>(u)] = 1;
                    queue.push_back(u);
                }
        }
    }
    return out;
}

namespace {

// k-colorability by backtracking over the node order; a node may open at
// most one fresh color, which kills color-permutation symmetry.
bool k_colorable(const std::vector<std::uint16_t>& nbr_mask, int k)
{
    const int n = static_cast<int>(nbr_mask.size());
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    // opened[v]: colors in use among nodes before v; depends only on the
    // prefix, so it survives backtracking.
    std::vector<int> opened(static_cast<std::size_t>(n) + 1, 0);

    int v = 0;
    while (true) {
        if (v == n)
            return true;
        int limit = std::min(k - 1, opened[static_cast<std::size_t>(v)]);
        int c = color[static_cast<std::size_t>(v)] + 1;
        for (; c <= limit; ++c) {
            bool clash = false;
            for (int u = 0; u < v; ++u)
                if ((nbr_mask[static_cast<std::size_t>(v)] >> u & 1u) &&
                    color[static_cast<std::size_t>(u)] == c) {
                    clash = true;
                    break;
                }
            if (!clash)
                break;
        }
        if (c <= limit) {
            color[static_cast<std::size_t>(v)] = c;
            opened[static_cast<std::size_t>(v) + 1] =
                std::max(opened[static_cast<std::size_t>(v)], c + 1);
            ++v;
            if (v < n)
                color[static_cast<std::size_t>(v)] = -1;
        } else {
            color[static_cast<std::size_t>(v)] = -1;
            --v;
            if (v < 0)
                return false;
        }
    }
}

} // namespace

int chromatic_oracle(const ExpandedGraph& g)
{
    const int n = g.n();
    if (n > 12)
        throw std::invalid_argument(
            "chromatic_oracle: exhaustive search capped at 12 nodes");
    if (n == 0)
        return 0;

    std::vector<std::uint16_t> nbr_mask(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        for (int u : g.adj[static_cast<std::size_t>(v)])
            nbr_mask[static_cast<std::size_t>(v)] |=
                static_cast<std::uint16_t>(1u << u);

    for (int k = 1; k < n; ++k)
        if (k_colorable(nbr_mask, k))
            return k;
    return n;
}

bool is_proper(const ExpandedGraph& g, const Coloring& c)
{
    if (c.color.size() != static_cast<std::size_t>(g.n()))
        return false;
    for (int v = 0; v < g.n(); ++v) {
        int cv = c.color[static_cast<std::size_t>(v)];
        if (cv == Coloring::kUncolored)
            continue;
        for (int u : g.adj[static_cast<std::size_t>(v)])
            if (u > v && c.color[static_cast<std::size_t>(u)] == cv)
                return false;
    }
    return true;
}

PRBAssignment assignment_from_coloring(const ExpandedGraph& g,
                                       const Coloring& c)
{
    if (!is_proper(g, c))
        throw std::invalid_argument(
            "assignment_from_coloring: coloring is not proper");

    PRBAssignment out;
    out.prbs.resize(static_cast<std::size_t>(g.n_faps));
    for (int v = 0; v < g.n(); ++v) {
        int cv = c.color[static_cast<std::size_t>(v)];
        if (cv == Coloring::kUncolored)
            continue;
        out.prbs[static_cast<std::size_t>(g.owner[static_cast<std::size_t>(v)])]
            .push_back(cv);
    }
    for (auto& set : out.prbs)
        std::sort(set.begin(), set.end());
    return out;
}

} // namespace femto
