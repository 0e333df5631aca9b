#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace reqcut {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using Vertex = std::size_t;
using EdgeId = std::size_t;
using EdgeSet = std::vector<EdgeId>;  // sorted ascending, no duplicates

/// Parses "3", "0.25", "-1e-2" style decimals or "a/b" into an exact rational.
Rational parse_rational(std::string_view text);
/// "7" for integers, "a/b" otherwise.
std::string format_rational(const Rational& value);
double to_double(const Rational& value);

struct Edge {
    EdgeId id;
    Vertex u;
    Vertex v;
    Rational cost;
    double cost_d;  // cost as double, kept in sync with `cost`

    Vertex other(Vertex w) const { return w == u ? v : u; }
};

/// Undirected multigraph with non-negative edge costs. Edge ids are dense,
/// equal to the insertion index. Self-loops are rejected; parallel edges are
/// allowed.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

    EdgeId add_edge(Vertex u, Vertex v, Rational cost = 1);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId id) const { return edges_.at(id); }

    /// Incident edge ids per vertex, ascending.
    std::vector<std::vector<EdgeId>> incidence() const;

private:
    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
};

/// Disjoint-set forest with path halving and union by size.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);

    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);
    std::size_t set_count() const { return sets_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t sets_;
};

struct Group {
    std::vector<Vertex> members;  // sorted ascending
    int requirement = 2;
};

struct Instance {
    Graph graph;
    std::vector<Group> groups;

    std::size_t group_count() const { return groups.size(); }
};

struct CutSolution {
    EdgeSet cut;
    Rational cost;
    double cost_d = 0.0;
    std::vector<int> components_per_group;
    bool feasible = false;
};

bool is_connected(const Graph& graph);

/// Connected-component label per vertex of (V, E \ cut). Labels are dense
/// and assigned in order of the smallest vertex of each component.
std::vector<std::size_t> component_labels(const Graph& graph, std::span<const EdgeId> cut);

/// Entry i = number of components of (V, E \ cut) meeting group i.
/// Throws InputError for an unknown edge id.
std::vector<int> components_per_group(const Instance& instance, std::span<const EdgeId> cut);

/// Builds the full CutSolution record (exact cost, counts, verdict) for `cut`.
CutSolution evaluate_cut(const Instance& instance, std::span<const EdgeId> cut);

struct SpanningTree {
    EdgeSet edges;
    double weight = 0.0;
};

/// Kruskal with ties broken by ascending edge id. `weights` is indexed by
/// edge id. Throws StructuralError if the graph is disconnected.
SpanningTree minimum_spanning_tree(const Graph& graph, std::span<const double> weights);

/// All invariant violations of the instance; empty means valid.
std::vector<std::string> validate(const Instance& instance);
/// Throws InputError listing every violation.
void require_valid(const Instance& instance);

/// Canonical whitespace format or its JSON mirror (detected by a leading '{').
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);
std::string format_instance(const Instance& instance);
std::string format_instance_json(const Instance& instance);

EdgeSet normalize_edge_set(std::vector<EdgeId> edges);

}  // namespace reqcut
