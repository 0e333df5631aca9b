#include "reqcut/exact_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>

#include "reqcut/errors.hpp"
#include "rollback_union_find.hpp"

namespace reqcut {

namespace {

struct TreeSearch {
    const Graph& graph;
    const std::function<bool(const EdgeSet&)>& visit;
    detail::RollbackUnionFind uf;
    EdgeSet chosen;
    std::size_t needed;
    bool stopped = false;

    // True if chosen edges plus edges [from, m) still connect every vertex.
    bool can_span(std::size_t from) const {
        UnionFind probe(graph.vertex_count());
        for (EdgeId id : chosen) probe.unite(graph.edge(id).u, graph.edge(id).v);
        for (EdgeId id = from; id < graph.edge_count(); ++id) probe.unite(graph.edge(id).u, graph.edge(id).v);
        return probe.set_count() == 1;
    }

    void run(std::size_t index) {
        if (stopped) return;
        if (chosen.size() == needed) {
            if (!visit(chosen)) stopped = true;
            return;
        }
        if (graph.edge_count() - index < needed - chosen.size()) return;
        const Edge& e = graph.edge(index);
        if (uf.unite(e.u, e.v)) {
            chosen.push_back(index);
            run(index + 1);
            chosen.pop_back();
            uf.rollback();
        }
        if (stopped) return;
        if (can_span(index + 1)) run(index + 1);
    }
};

}  // namespace

void for_each_spanning_tree(const Graph& graph, const std::function<bool(const EdgeSet&)>& visit) {
    if (graph.vertex_count() == 0) return;
    if (!is_connected(graph)) return;
    TreeSearch search{graph, visit, detail::RollbackUnionFind(graph.vertex_count()), {}, graph.vertex_count() - 1};
    search.run(0);
}

std::vector<EdgeSet> enumerate_spanning_trees(const Graph& graph) {
    if (graph.vertex_count() > 9)
        throw ResourceError("enumerate_spanning_trees: n = " + std::to_string(graph.vertex_count()) + " exceeds cap 9");
    std::vector<EdgeSet> trees;
    for_each_spanning_tree(graph, [&](const EdgeSet& t) {
        trees.push_back(t);
        return true;
    });
    return trees;
}

namespace {

class CutSearch {
public:
    CutSearch(const Instance& instance, std::vector<std::int64_t> costs, double time_cap)
        : instance_(instance),
          costs_(std::move(costs)),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(time_cap))) {}

    EdgeSet solve() {
        run(0, 0);
        if (!found_) throw std::logic_error("exact_solve: no feasible cut; instance invariants violated");
        return best_set_;
    }

private:
    bool feasible(std::span<const EdgeId> cut) const {
        auto counts = components_per_group(instance_, cut);
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (counts[i] < instance_.groups[i].requirement) return false;
        return true;
    }

    void consider(std::int64_t cost) {
        if (!found_ || cost < best_cost_ ||
            (cost == best_cost_ && std::lexicographical_compare(current_.begin(), current_.end(), best_set_.begin(),
                                                                best_set_.end()))) {
            found_ = true;
            best_cost_ = cost;
            best_set_ = current_;
        }
    }

    void run(std::size_t index, std::int64_t cost) {
        if ((++nodes_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_)
            throw ResourceError("exact_solve: time cap exceeded");
        if (found_ && cost > best_cost_) return;
        if (feasible(current_)) {
            consider(cost);
            return;
        }
        const std::size_t m = instance_.graph.edge_count();
        if (index == m) return;
        // Cutting every undecided edge is the most any completion can do.
        std::vector<EdgeId> widest = current_;
        for (EdgeId id = index; id < m; ++id) widest.push_back(id);
        if (!feasible(widest)) return;

        current_.push_back(index);
        run(index + 1, cost + costs_[index]);
        current_.pop_back();
        run(index + 1, cost);
    }

    const Instance& instance_;
    std::vector<std::int64_t> costs_;
    std::chrono::steady_clock::time_point deadline_;
    EdgeSet current_;
    EdgeSet best_set_;
    std::int64_t best_cost_ = 0;
    bool found_ = false;
    std::uint64_t nodes_ = 0;
};

// Costs rescaled to integers over their common denominator.
std::vector<std::int64_t> integer_costs(const Graph& graph) {
    BigInt common = 1;
    for (const Edge& e : graph.edges()) common = boost::multiprecision::lcm(common, denominator(e.cost));
    std::vector<std::int64_t> scaled;
    BigInt total = 0;
    for (const Edge& e : graph.edges()) {
        BigInt s = numerator(e.cost) * (common / denominator(e.cost));
        total += s;
        scaled.push_back(0);
        if (total > std::numeric_limits<std::int64_t>::max())
            throw ResourceError("exact_solve: costs overflow 64-bit scaled arithmetic");
        scaled.back() = s.convert_to<std::int64_t>();
    }
    return scaled;
}

}  // namespace

CutSolution exact_solve(const Instance& instance, const OracleBudget& budget) {
    if (budget.max_edges > 26) throw ConfigError("OracleBudget.max_edges must be <= 26");
    if (instance.graph.edge_count() > budget.max_edges)
        throw ResourceError("exact_solve: m = " + std::to_string(instance.graph.edge_count()) + " exceeds budget " +
                            std::to_string(budget.max_edges));
    require_valid(instance);
    CutSearch search(instance, integer_costs(instance.graph), budget.time_cap_seconds);
    return evaluate_cut(instance, search.solve());
}

double safe_ratio(double numerator, double denominator) {
    if (denominator > 0.0) return numerator / denominator;
    return numerator <= 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

RatioReport approximation_ratio(const Instance& instance, const CutSolution& solution, const OracleBudget& budget,
                                std::optional<double> lp_opt) {
    CutSolution checked = evaluate_cut(instance, solution.cut);
    if (!checked.feasible) throw ContractError("approximation_ratio: solution is infeasible");
    CutSolution optimum = exact_solve(instance, budget);
    RatioReport report;
    report.exact_optimum = optimum.cost_d;
    report.to_exact = safe_ratio(checked.cost_d, optimum.cost_d);
    if (lp_opt) report.to_lp = safe_ratio(checked.cost_d, *lp_opt);
    return report;
}

}  // namespace reqcut
