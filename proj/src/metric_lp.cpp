#include "reqcut/metric_lp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "reqcut/errors.hpp"
#include "reqcut/exact_oracle.hpp"
#include "reqcut/lp_core.hpp"

namespace reqcut {

Metric::Metric(std::size_t n, double fill) : n_(n), values_(n * n, fill) {
    for (std::size_t v = 0; v < n; ++v) values_[v * n + v] = 0.0;
}

void Metric::set(Vertex u, Vertex v, double value) {
    if (u == v) return;
    values_[u * n_ + v] = value;
    values_[v * n_ + u] = value;
}

double Metric::max_triangle_violation() const {
    double worst = 0.0;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v)
            for (Vertex w = 0; w < n_; ++w) worst = std::max(worst, (*this)(u, w) - (*this)(u, v) - (*this)(v, w));
    return worst;
}

std::size_t pair_index(std::size_t n, Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    // Row-major upper triangle without the diagonal.
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

AugmentedGraph augment_group(const Instance& instance, std::size_t group_index) {
    const Graph& base = instance.graph;
    AugmentedGraph aug;
    aug.group = group_index;
    aug.base_edge_count = base.edge_count();
    aug.terminals = instance.groups.at(group_index).members;
    aug.graph = Graph(base.vertex_count());
    for (const Edge& e : base.edges()) aug.graph.add_edge(e.u, e.v, e.cost);

    std::set<std::pair<Vertex, Vertex>> adjacent;
    for (const Edge& e : base.edges()) adjacent.insert(std::minmax(e.u, e.v));
    for (std::size_t i = 0; i < aug.terminals.size(); ++i)
        for (std::size_t j = i + 1; j < aug.terminals.size(); ++j) {
            auto key = std::minmax(aug.terminals[i], aug.terminals[j]);
            if (!adjacent.count(key)) aug.graph.add_edge(key.first, key.second, 0);
        }
    return aug;
}

std::optional<TreeCut> separation_oracle(const AugmentedGraph& augmented, const Metric& metric, int requirement,
                                         double tol) {
    std::vector<char> terminal(augmented.graph.vertex_count(), 0);
    for (Vertex v : augmented.terminals) terminal[v] = 1;

    std::vector<EdgeId> clique;
    for (const Edge& e : augmented.graph.edges())
        if (terminal[e.u] && terminal[e.v]) clique.push_back(e.id);
    std::stable_sort(clique.begin(), clique.end(), [&](EdgeId a, EdgeId b) {
        const Edge& ea = augmented.graph.edge(a);
        const Edge& eb = augmented.graph.edge(b);
        return metric(ea.u, ea.v) < metric(eb.u, eb.v);
    });

    UnionFind uf(augmented.graph.vertex_count());
    TreeCut tree;
    tree.group = augmented.group;
    for (EdgeId id : clique) {
        const Edge& e = augmented.graph.edge(id);
        if (uf.unite(e.u, e.v)) {
            tree.edges.push_back(id);
            tree.length += metric(e.u, e.v);
        }
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    if (tree.length < static_cast<double>(requirement - 1) - tol) return tree;
    return std::nullopt;
}

double metric_cost(const Graph& graph, const Metric& metric) {
    double total = 0.0;
    for (const Edge& e : graph.edges()) total += e.cost_d * metric(e.u, e.v);
    return total;
}

namespace {

struct Row {
    std::vector<std::pair<std::size_t, double>> coefficients;  // sorted by variable
    double rhs = 0.0;

    bool operator<(const Row& other) const {
        return std::tie(coefficients, rhs) < std::tie(other.coefficients, other.rhs);
    }
};

Row normalized(std::vector<std::pair<std::size_t, double>> coefficients, double rhs) {
    std::sort(coefficients.begin(), coefficients.end());
    std::vector<std::pair<std::size_t, double>> merged;
    for (const auto& [var, coef] : coefficients) {
        if (!merged.empty() && merged.back().first == var)
            merged.back().second += coef;
        else
            merged.emplace_back(var, coef);
    }
    return Row{std::move(merged), rhs};
}

struct TriangleViolation {
    double amount;
    Vertex u, v, w;  // d(u,w) > d(u,v) + d(v,w)
};

}  // namespace

LpResult solve_relaxed_lp(const Instance& instance, const LpOptions& options) {
    require_valid(instance);
    const std::size_t n = instance.graph.vertex_count();
    const std::size_t vars = n * (n - 1) / 2;

    std::vector<AugmentedGraph> augmented;
    for (std::size_t i = 0; i < instance.groups.size(); ++i) augmented.push_back(augment_group(instance, i));

    std::vector<double> objective(vars, 0.0);
    for (const Edge& e : instance.graph.edges()) objective[pair_index(n, e.u, e.v)] -= e.cost_d;  // maximize -c.d

    std::vector<Row> rows;
    std::set<Row> seen;
    for (std::size_t p = 0; p < vars; ++p) rows.push_back(Row{{{p, 1.0}}, 1.0});

    const std::size_t triangle_cap =
        options.max_triangle_cuts_per_round > 0 ? options.max_triangle_cuts_per_round : 4 * n * n;

    LpResult result;
    std::size_t cuts = 0;
    double last_objective = 0.0;
    for (;;) {
        std::vector<std::vector<double>> a(rows.size(), std::vector<double>(vars, 0.0));
        std::vector<double> b(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto& [var, coef] : rows[r].coefficients) a[r][var] = coef;
            b[r] = rows[r].rhs;
        }
        LpSolution sol;
        try {
            sol = DenseSimplex(a, b, objective, options.lp_tol).solve();
        } catch (const std::runtime_error& e) {
            throw ConvergenceError(std::string("solve_relaxed_lp: ") + e.what(), last_objective);
        }
        ++result.iterations;
        if (sol.status != LpStatus::optimal)
            throw ConvergenceError("solve_relaxed_lp: LP core returned a non-optimal status", last_objective);

        Metric metric(n);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) metric.set(u, v, std::clamp(sol.x[pair_index(n, u, v)], 0.0, 1.0));
        last_objective = metric_cost(instance.graph, metric);

        std::size_t added = 0;
        for (std::size_t i = 0; i < augmented.size(); ++i) {
            auto violated = separation_oracle(augmented[i], metric, instance.groups[i].requirement, options.separation_tol);
            if (!violated) continue;
            std::vector<std::pair<std::size_t, double>> coefficients;
            for (EdgeId id : violated->edges) {
                const Edge& e = augmented[i].graph.edge(id);
                coefficients.emplace_back(pair_index(n, e.u, e.v), -1.0);
            }
            Row row = normalized(std::move(coefficients), -static_cast<double>(instance.groups[i].requirement - 1));
            if (!seen.insert(row).second) continue;
            rows.push_back(std::move(row));
            result.active_tree_cuts.push_back(std::move(*violated));
            ++added;
        }

        std::vector<TriangleViolation> triangles;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex w = u + 1; w < n; ++w)
                for (Vertex v = 0; v < n; ++v) {
                    if (v == u || v == w) continue;
                    double excess = metric(u, w) - metric(u, v) - metric(v, w);
                    if (excess > options.separation_tol) triangles.push_back({excess, u, v, w});
                }
        std::stable_sort(triangles.begin(), triangles.end(),
                         [](const TriangleViolation& x, const TriangleViolation& y) { return x.amount > y.amount; });
        if (triangles.size() > triangle_cap) triangles.resize(triangle_cap);
        for (const auto& t : triangles) {
            Row row = normalized({{pair_index(n, t.u, t.w), 1.0}, {pair_index(n, t.u, t.v), -1.0},
                                  {pair_index(n, t.v, t.w), -1.0}},
                                 0.0);
            if (!seen.insert(row).second) continue;
            rows.push_back(std::move(row));
            ++result.triangle_cuts;
            ++added;
        }

        if (added == 0) {
            result.metric = std::move(metric);
            result.objective = last_objective;
            return result;
        }
        cuts += added;
        if (cuts > options.max_cuts)
            throw ConvergenceError("solve_relaxed_lp: cut cap of " + std::to_string(options.max_cuts) + " exceeded",
                                   last_objective);
    }
}

Metric scale_metric(const Metric& metric) {
    Metric scaled(metric.size());
    for (Vertex u = 0; u < metric.size(); ++u)
        for (Vertex v = u + 1; v < metric.size(); ++v) scaled.set(u, v, std::min(2.0 * metric(u, v), 1.0));
    return scaled;
}

namespace {

// Repeatedly strips leaves that are not terminals; returns surviving edges.
EdgeSet terminal_core(const Graph& graph, const EdgeSet& tree, const std::vector<char>& terminal) {
    const std::size_t n = graph.vertex_count();
    std::vector<int> degree(n, 0);
    std::vector<std::vector<EdgeId>> incident(n);
    for (EdgeId id : tree) {
        const Edge& e = graph.edge(id);
        ++degree[e.u];
        ++degree[e.v];
        incident[e.u].push_back(id);
        incident[e.v].push_back(id);
    }
    std::vector<char> removed(graph.edge_count(), 0);
    std::vector<Vertex> stack;
    for (Vertex v = 0; v < n; ++v)
        if (degree[v] == 1 && !terminal[v]) stack.push_back(v);
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        if (degree[v] != 1) continue;
        for (EdgeId id : incident[v]) {
            if (removed[id]) continue;
            removed[id] = 1;
            --degree[v];
            Vertex w = graph.edge(id).other(v);
            if (--degree[w] == 1 && !terminal[w]) stack.push_back(w);
            break;
        }
    }
    EdgeSet core;
    for (EdgeId id : tree)
        if (!removed[id]) core.push_back(id);
    return core;
}

}  // namespace

EquivalenceCheck check_cut_equivalence(const Instance& instance, std::size_t group_index, std::span<const EdgeId> cut,
                                       std::size_t max_edges) {
    if (group_index >= instance.groups.size()) throw InputError("group index out of range");
    AugmentedGraph aug = augment_group(instance, group_index);
    if (aug.graph.edge_count() > max_edges)
        throw ResourceError("check_cut_equivalence: augmented graph has " + std::to_string(aug.graph.edge_count()) +
                            " edges, budget " + std::to_string(max_edges));
    const Group& group = instance.groups[group_index];

    EquivalenceCheck check;
    check.components_ok = components_per_group(instance, cut)[group_index] >= group.requirement;

    auto labels = component_labels(instance.graph, cut);
    std::vector<char> in_cut(aug.graph.edge_count(), 0);
    for (EdgeId id : cut) in_cut[id] = 1;
    for (const Edge& e : aug.graph.edges())
        if (aug.is_synthetic(e.id)) in_cut[e.id] = labels[e.u] != labels[e.v];

    std::vector<char> terminal(aug.graph.vertex_count(), 0);
    for (Vertex v : group.members) terminal[v] = 1;

    const int needed = group.requirement - 1;
    check.all_trees_cut = true;
    for_each_spanning_tree(aug.graph, [&](const EdgeSet& tree) {
        int count = 0;
        for (EdgeId id : terminal_core(aug.graph, tree, terminal)) count += in_cut[id];
        if (count < needed) {
            check.all_trees_cut = false;
            return false;
        }
        return true;
    });
    return check;
}

}  // namespace reqcut
