#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "reqcut/graph.hpp"

namespace reqcut {

struct OracleBudget {
    std::size_t max_edges = 20;  // at most 26
    double time_cap_seconds = 120.0;
};

/// Minimum-cost feasible cut by include-first branch and bound. Among equal
/// costs the lexicographically smallest edge set wins. Throws ResourceError
/// when m exceeds the budget or the time cap is hit.
CutSolution exact_solve(const Instance& instance, const OracleBudget& budget = {});

/// Calls `visit` with each spanning tree (sorted edge ids) of `graph`.
/// Enumeration stops early when `visit` returns false. No size cap.
void for_each_spanning_tree(const Graph& graph, const std::function<bool(const EdgeSet&)>& visit);

/// Every spanning tree of `graph`. Requires n <= 9.
std::vector<EdgeSet> enumerate_spanning_trees(const Graph& graph);

struct RatioReport {
    double exact_optimum = 0.0;
    double to_exact = 0.0;
    std::optional<double> to_lp;
};

/// cost / exact optimum (and cost / lp_opt when given). 0/0 counts as 1.
/// Throws ContractError if `solution` is infeasible for `instance`.
RatioReport approximation_ratio(const Instance& instance, const CutSolution& solution, const OracleBudget& budget = {},
                                std::optional<double> lp_opt = std::nullopt);

double safe_ratio(double numerator, double denominator);

}  // namespace reqcut
