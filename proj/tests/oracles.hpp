#pragma once

// Brute-force references shared by the test binaries. Deliberately naive:
// plain subset scans with no pruning, so they share no logic with the
// library code they check.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "reqcut/graph.hpp"

namespace oracle {

using reqcut::EdgeId;
using reqcut::Graph;
using reqcut::Instance;
using reqcut::Vertex;

inline std::size_t find(std::vector<std::size_t>& p, std::size_t x) {
    while (p[x] != x) x = p[x];
    return x;
}

// Components of (V, edges in mask) as a label per vertex.
inline std::vector<std::size_t> labels_of(const Graph& g, std::uint64_t keep_mask) {
    std::vector<std::size_t> p(g.vertex_count());
    std::iota(p.begin(), p.end(), 0);
    for (const auto& e : g.edges())
        if (keep_mask >> e.id & 1) p[find(p, e.u)] = find(p, e.v);
    std::vector<std::size_t> out(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) out[v] = find(p, v);
    return out;
}

inline bool is_spanning_tree(const Graph& g, std::uint64_t mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) + 1 != g.vertex_count()) return false;
    auto l = labels_of(g, mask);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (l[v] != l[0]) return false;
    return true;
}

inline std::uint64_t count_spanning_trees(const Graph& g) {
    std::uint64_t count = 0;
    const std::uint64_t all = std::uint64_t{1} << g.edge_count();
    for (std::uint64_t mask = 0; mask < all; ++mask)
        if (is_spanning_tree(g, mask)) ++count;
    return count;
}

inline bool feasible(const Instance& inst, std::uint64_t cut_mask) {
    const std::uint64_t all = (std::uint64_t{1} << inst.graph.edge_count()) - 1;
    auto l = labels_of(inst.graph, all & ~cut_mask);
    for (const auto& group : inst.groups) {
        std::vector<std::size_t> seen;
        for (Vertex v : group.members)
            if (std::find(seen.begin(), seen.end(), l[v]) == seen.end()) seen.push_back(l[v]);
        if (static_cast<int>(seen.size()) < group.requirement) return false;
    }
    return true;
}

// Minimum feasible cut cost by scanning every subset.
inline reqcut::Rational min_cut_cost(const Instance& inst) {
    reqcut::Rational best = -1;
    const std::uint64_t all = std::uint64_t{1} << inst.graph.edge_count();
    for (std::uint64_t mask = 0; mask < all; ++mask) {
        if (!feasible(inst, mask)) continue;
        reqcut::Rational cost = 0;
        for (const auto& e : inst.graph.edges())
            if (mask >> e.id & 1) cost += e.cost;
        if (best < 0 || cost < best) best = cost;
    }
    return best;
}

// Minimal Steiner trees of one group: edge subsets forming a tree that
// touches every terminal and whose degree-1 vertices are all terminals.
inline std::size_t count_minimal_steiner_trees(const Graph& g, const reqcut::Group& group) {
    std::size_t count = 0;
    const std::uint64_t all = std::uint64_t{1} << g.edge_count();
    std::vector<char> terminal(g.vertex_count(), 0);
    for (Vertex v : group.members) terminal[v] = 1;
    for (std::uint64_t mask = 1; mask < all; ++mask) {
        std::vector<int> degree(g.vertex_count(), 0);
        for (const auto& e : g.edges())
            if (mask >> e.id & 1) ++degree[e.u], ++degree[e.v];
        std::size_t touched = 0;
        bool ok = true;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (degree[v] > 0) ++touched;
            if (terminal[v] && degree[v] == 0) ok = false;
            if (degree[v] == 1 && !terminal[v]) ok = false;
        }
        if (!ok || static_cast<std::size_t>(__builtin_popcountll(mask)) + 1 != touched) continue;
        auto l = labels_of(g, mask);
        Vertex root = group.members.front();
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (degree[v] > 0 && l[v] != l[root]) ok = false;
        if (ok) ++count;
    }
    return count;
}

}  // namespace oracle
