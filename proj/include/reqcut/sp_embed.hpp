#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reqcut/errors.hpp"
#include "reqcut/graph.hpp"
#include "reqcut/rounding.hpp"

namespace reqcut {

enum class TraceKind { leaf, series, parallel };

struct TraceNode {
    TraceKind kind = TraceKind::leaf;
    std::vector<std::size_t> children;  // series: in path order from a to b
    Vertex a = 0;                        // terminals of the composed block
    Vertex b = 0;
    EdgeId edge = 0;                     // leaves only
};

/// Series/parallel composition tree of a two-terminal SP graph, stored as a
/// flat node array. Consecutive same-kind compositions are merged, so kinds
/// alternate along every root path.
struct CompositionTrace {
    std::vector<TraceNode> nodes;
    std::size_t root = 0;

    const TraceNode& node(std::size_t i) const { return nodes.at(i); }
    /// Longest leaf-to-root path, counted in nodes, minus one.
    int depth() const;
    bool has_same_kind_child() const;
};

struct SpInstance {
    Graph graph;
    CompositionTrace trace;
    Vertex source = 0;
    Vertex sink = 1;
};

class SpParseError : public InputError {
public:
    SpParseError(const std::string& what, std::size_t position)
        : InputError(what + " at offset " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Trace of `graph` as a two-terminal SP graph with terminals (x, y), built
/// by exhaustive series and parallel reductions; empty if not SP.
std::optional<CompositionTrace> recognize_sp(const Graph& graph, Vertex x, Vertex y);

struct SpTerminals {
    CompositionTrace trace;
    Vertex source;
    Vertex sink;
};

/// Tries every terminal pair and keeps the trace of least depth (first pair
/// on ties). Empty if no pair works.
std::optional<SpTerminals> find_sp_terminals(const Graph& graph);

/// Grammar: E := edge(cost) | S(E, E, ...) | P(E, E, ...); '#' starts a
/// comment. Source is vertex 0, sink vertex 1. Single-child compositions
/// collapse into their child.
SpInstance parse_sp_expression(std::string_view text);
std::string format_sp_expression(const CompositionTrace& trace, const Graph& graph);

struct TraceEdge {
    EdgeId edge;
    Vertex u;
    Vertex v;
};

/// Rebuilds the leaf edge list from the trace, checking that series children
/// chain end to end and parallel children share terminals. Throws InputError
/// on a malformed trace.
std::vector<TraceEdge> recompose(const CompositionTrace& trace);

/// Spanning tree sampler: series nodes glue child trees; parallel nodes keep
/// the child with the shortest terminal path (lowest index on ties) and drop
/// one uniformly chosen edge from every other child's terminal path. Path
/// lengths count edges. Throws ContractError unless all edge costs are 1.
EdgeSet construct_tree(const SpInstance& sp, std::uint64_t seed);

/// Same sampler on the bare topology, ignoring edge costs.
EdgeSet sample_spanning_tree(const CompositionTrace& trace, const Graph& graph, std::uint64_t seed);

struct SubdividedSp {
    SpInstance sp;
    std::vector<EdgeId> origin;  // subdivided edge id -> original edge id
};

/// Replaces every edge of positive integer cost k by a path of k unit edges.
SubdividedSp subdivide_unit(const SpInstance& sp);

struct EdgeStretch {
    EdgeId edge;
    Vertex u;
    Vertex v;
    double mean = 0.0;
    double std_error = 0.0;
};

/// Monte-Carlo mean of dist_T(u,v) / dist_G(u,v) for every edge over
/// `samples` independent construct_tree draws. Requires samples >= 100.
std::vector<EdgeStretch> estimate_distortion(const SpInstance& sp, std::size_t samples, std::uint64_t seed);

/// Hop distances in a tree given as an edge subset of `graph`.
std::vector<std::vector<int>> tree_distances(const Graph& graph, std::span<const EdgeId> tree);

struct EmbeddingReport {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    EdgeSet tree;
    double tree_lp_opt = 0.0;
    double tree_cost = 0.0;
    double graph_cost = 0.0;
    bool feasible_before_repair = false;
    bool repaired = false;
};

struct SpPipelineResult {
    CutSolution solution;
    std::vector<EmbeddingReport> embeddings;
    std::size_t chosen_embedding = 0;
    int depth = 0;
    double alpha = 0.0;
    double sigma_hat = 0.0;  // g
};

/// Embed-then-round: sample a spanning tree, price each tree edge by the
/// total cost of graph edges routed over it, solve the tree instance with
/// sigma = g, map the tree partition back to the graph cut, re-verify on
/// the graph (repairing if needed) and keep the cheapest over embed_trials.
SpPipelineResult solve_sp_pipeline(const Instance& instance, const CompositionTrace& trace,
                                   const RoundingConfig& config, std::size_t embed_trials);

}  // namespace reqcut
