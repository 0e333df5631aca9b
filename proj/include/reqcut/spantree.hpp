#pragma once

#include <vector>

#include "reqcut/graph.hpp"

namespace reqcut {

/// Multigraph Laplacian with row and column 0 removed. Off-diagonal entries
/// are minus the edge multiplicity between the pair.
struct LaplacianMinor {
    std::size_t size = 0;
    std::vector<long long> entries;  // row-major size x size

    long long at(std::size_t r, std::size_t c) const { return entries[r * size + c]; }
};

LaplacianMinor laplacian_minor(const Graph& graph);

/// Number of spanning trees via fraction-free (Bareiss) elimination on the
/// Laplacian minor. Throws StructuralError on a disconnected graph.
BigInt count_spanning_trees_exact(const Graph& graph);

/// ln tau(G) from a partially pivoted LU factorization in double precision.
double log_spanning_trees(const Graph& graph);

/// m - n + 1 for a connected graph.
long long feedback_edge_number(const Graph& graph);

}  // namespace reqcut
