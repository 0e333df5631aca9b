#pragma once

#include <optional>
#include <vector>

#include "reqcut/graph.hpp"

namespace reqcut {

/// A tree subgraph spanning a terminal group whose leaves are all terminals.
struct SteinerTree {
    std::size_t group = 0;
    EdgeSet edges;
    std::vector<Vertex> vertices;  // sorted
};

/// All distinct minimal Steiner trees (by edge set) of group `group_index`.
/// Exhaustive over acyclic edge subsets; throws ResourceError when
/// m > max_edges (use sigma_upper_bound instead).
std::vector<SteinerTree> enumerate_minimal_steiner_trees(const Instance& instance, std::size_t group_index,
                                                         std::size_t max_edges = 24);

/// True if `edges` form a tree covering every member of `group` with only
/// terminal leaves.
bool is_minimal_steiner_tree(const Graph& graph, const Group& group, std::span<const EdgeId> edges);

struct SigmaEstimate {
    double log_sigma = 0.0;
    std::optional<BigInt> exact_sigma;
};

/// sigma <= g * tau(G): log_sigma = ln g + ln tau, exact_sigma = g * tau.
SigmaEstimate sigma_upper_bound(const Instance& instance);

/// Exact sigma: total number of minimal Steiner trees over all groups.
SigmaEstimate sigma_exact(const Instance& instance, std::size_t max_edges = 24);

}  // namespace reqcut
