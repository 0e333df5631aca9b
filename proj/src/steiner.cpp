#include "reqcut/steiner.hpp"

#include <algorithm>
#include <cmath>

#include "reqcut/errors.hpp"
#include "reqcut/spantree.hpp"
#include "rollback_union_find.hpp"

namespace reqcut {

bool is_minimal_steiner_tree(const Graph& graph, const Group& group, std::span<const EdgeId> edges) {
    if (edges.empty()) return false;
    std::vector<int> degree(graph.vertex_count(), 0);
    UnionFind uf(graph.vertex_count());
    for (EdgeId id : edges) {
        const Edge& e = graph.edge(id);
        if (!uf.unite(e.u, e.v)) return false;
        ++degree[e.u];
        ++degree[e.v];
    }
    std::size_t touched = 0;
    for (int d : degree) touched += d > 0;
    if (touched != edges.size() + 1) return false;  // acyclic with one component
    std::vector<char> terminal(graph.vertex_count(), 0);
    for (Vertex v : group.members) {
        if (degree[v] == 0) return false;
        terminal[v] = 1;
    }
    for (Vertex v = 0; v < graph.vertex_count(); ++v)
        if (degree[v] == 1 && !terminal[v]) return false;
    return true;
}

namespace {

struct SteinerSearch {
    const Graph& graph;
    const Group& group;
    std::size_t group_index;
    detail::RollbackUnionFind uf;
    EdgeSet chosen;
    std::vector<SteinerTree> found;

    void run(std::size_t index) {
        if (index == graph.edge_count()) {
            if (is_minimal_steiner_tree(graph, group, chosen)) {
                SteinerTree tree{group_index, chosen, {}};
                for (EdgeId id : chosen) {
                    tree.vertices.push_back(graph.edge(id).u);
                    tree.vertices.push_back(graph.edge(id).v);
                }
                std::sort(tree.vertices.begin(), tree.vertices.end());
                tree.vertices.erase(std::unique(tree.vertices.begin(), tree.vertices.end()), tree.vertices.end());
                found.push_back(std::move(tree));
            }
            return;
        }
        const Edge& e = graph.edge(index);
        if (uf.unite(e.u, e.v)) {
            chosen.push_back(index);
            run(index + 1);
            chosen.pop_back();
            uf.rollback();
        }
        run(index + 1);
    }
};

}  // namespace

std::vector<SteinerTree> enumerate_minimal_steiner_trees(const Instance& instance, std::size_t group_index,
                                                         std::size_t max_edges) {
    if (group_index >= instance.groups.size()) throw InputError("group index out of range");
    if (instance.graph.edge_count() > max_edges)
        throw ResourceError("enumerate_minimal_steiner_trees: m = " + std::to_string(instance.graph.edge_count()) +
                            " exceeds budget " + std::to_string(max_edges) + "; use sigma_upper_bound");
    SteinerSearch search{instance.graph, instance.groups[group_index], group_index,
                         detail::RollbackUnionFind(instance.graph.vertex_count()), {}, {}};
    search.run(0);
    return std::move(search.found);
}

SigmaEstimate sigma_upper_bound(const Instance& instance) {
    if (instance.groups.empty()) throw InputError("sigma_upper_bound: instance has no groups");
    SigmaEstimate est;
    const double g = static_cast<double>(instance.groups.size());
    est.log_sigma = std::log(g) + log_spanning_trees(instance.graph);
    est.exact_sigma = BigInt(instance.groups.size()) * count_spanning_trees_exact(instance.graph);
    return est;
}

SigmaEstimate sigma_exact(const Instance& instance, std::size_t max_edges) {
    if (!is_connected(instance.graph)) throw StructuralError("sigma_exact: graph is disconnected");
    BigInt total = 0;
    for (std::size_t i = 0; i < instance.groups.size(); ++i)
        total += enumerate_minimal_steiner_trees(instance, i, max_edges).size();
    SigmaEstimate est;
    est.exact_sigma = total;
    est.log_sigma = total > 0 ? std::log(total.convert_to<double>()) : 0.0;
    return est;
}

}  // namespace reqcut
