#pragma once

#include <optional>
#include <vector>

#include "reqcut/graph.hpp"

namespace reqcut {

/// Symmetric distance table over all vertex pairs, zero on the diagonal.
class Metric {
public:
    Metric() = default;
    explicit Metric(std::size_t n, double fill = 0.0);

    std::size_t size() const { return n_; }
    double operator()(Vertex u, Vertex v) const { return values_[u * n_ + v]; }
    void set(Vertex u, Vertex v, double value);

    /// Largest amount by which any triangle inequality is violated (0 if none).
    double max_triangle_violation() const;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

/// Index of the pair variable {u, v} (u != v) among n(n-1)/2 variables.
std::size_t pair_index(std::size_t n, Vertex u, Vertex v);

/// G_{S_i}: the base graph plus zero-cost edges between terminals of group i
/// that are not already adjacent. Base edges keep their ids; synthetic ids
/// follow in lexicographic pair order.
struct AugmentedGraph {
    Graph graph;
    std::size_t group = 0;
    std::size_t base_edge_count = 0;
    std::vector<Vertex> terminals;

    bool is_synthetic(EdgeId id) const { return id >= base_edge_count; }
};

AugmentedGraph augment_group(const Instance& instance, std::size_t group_index);

struct TreeCut {
    std::size_t group = 0;
    EdgeSet edges;  // ids in the group's augmented graph
    double length = 0.0;
};

/// Minimum spanning tree of the terminal clique of `augmented` under `metric`
/// (ties by edge id); returned when its length is below requirement - 1 - tol.
std::optional<TreeCut> separation_oracle(const AugmentedGraph& augmented, const Metric& metric, int requirement,
                                         double tol = 1e-7);

struct LpOptions {
    double separation_tol = 1e-7;
    double lp_tol = 1e-9;
    std::size_t max_cuts = 10000;
    std::size_t max_triangle_cuts_per_round = 0;  // 0 = 4 * n^2
};

struct LpResult {
    Metric metric;
    double objective = 0.0;
    std::vector<TreeCut> active_tree_cuts;
    std::size_t triangle_cuts = 0;
    std::size_t iterations = 0;
};

/// Cutting-plane solve of the metric relaxation: box bounds, lazily separated
/// triangle inequalities and group spanning-tree constraints. Throws
/// ConvergenceError once more than max_cuts cuts have been added.
LpResult solve_relaxed_lp(const Instance& instance, const LpOptions& options = {});

/// Pointwise min(2 d, 1).
Metric scale_metric(const Metric& metric);

/// Sum of c_e * d(e) over the base edges.
double metric_cost(const Graph& graph, const Metric& metric);

struct EquivalenceCheck {
    bool components_ok = false;
    bool all_trees_cut = false;
};

/// Compares "group i lies in >= r_i components of G - cut" with "every
/// spanning tree of G_{S_i} has >= r_i - 1 cut edges on its terminal core"
/// (the tree pruned down to the minimal subtree spanning S_i). A synthetic
/// edge counts as cut iff its ends are separated by the cut.
/// Throws ResourceError when G_{S_i} has more than max_edges edges.
EquivalenceCheck check_cut_equivalence(const Instance& instance, std::size_t group_index, std::span<const EdgeId> cut,
                                       std::size_t max_edges = 20);

}  // namespace reqcut
