#include "reqcut/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "reqcut/errors.hpp"
#include "reqcut/random.hpp"

namespace reqcut {

double compute_alpha(double log_sigma, double c) {
    if (!(c >= 4.0)) throw ConfigError("rounding constant c must be >= 4");
    return 1.0 / (c * std::max(1.0, log_sigma));
}

std::size_t default_trials(double log_sigma) {
    double t = std::ceil(10.0 * std::max(0.0, log_sigma));
    return static_cast<std::size_t>(std::clamp(t, 8.0, 256.0));
}

TrialReport round_once(const Instance& instance, const Metric& scaled, double alpha, std::uint64_t seed,
                       std::size_t index) {
    TrialReport report;
    report.index = index;
    report.seed = seed;
    report.threshold_min = std::numeric_limits<double>::infinity();
    report.threshold_max = 0.0;
    double sum = 0.0;
    for (const Edge& e : instance.graph.edges()) {
        const double x = alpha * uniform_open01(mix_key(seed, e.id));
        const double d = scaled(e.u, e.v);
        report.threshold_min = std::min(report.threshold_min, x);
        report.threshold_max = std::max(report.threshold_max, x);
        sum += x;
        if (d >= alpha || x <= d) report.cut.push_back(e.id);
    }
    const std::size_t m = instance.graph.edge_count();
    if (m == 0) report.threshold_min = 0.0;
    report.threshold_mean = m > 0 ? sum / static_cast<double>(m) : 0.0;
    CutSolution eval = evaluate_cut(instance, report.cut);
    report.cost = eval.cost;
    report.cost_d = eval.cost_d;
    report.feasible = eval.feasible;
    return report;
}

CutSolution repair_cut(const Instance& instance, const Metric& scaled, const EdgeSet& start) {
    const Graph& g = instance.graph;
    std::vector<char> in_cut(g.edge_count(), 0);
    for (EdgeId id : start) in_cut.at(id) = 1;
    std::vector<EdgeId> order;
    for (const Edge& e : g.edges())
        if (!in_cut[e.id]) order.push_back(e.id);
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        const Edge& ea = g.edge(a);
        const Edge& eb = g.edge(b);
        double da = scaled(ea.u, ea.v);
        double db = scaled(eb.u, eb.v);
        if (da != db) return da > db;
        if (ea.cost != eb.cost) return ea.cost < eb.cost;
        return a < b;
    });

    std::vector<EdgeId> cut(start.begin(), start.end());
    CutSolution sol = evaluate_cut(instance, cut);
    for (EdgeId id : order) {
        if (sol.feasible) break;
        cut.push_back(id);
        sol = evaluate_cut(instance, cut);
    }
    if (!sol.feasible) throw InputError("repair_cut: infeasible even with every edge cut");
    return sol;
}

RequirementCutResult round_lp_solution(const Instance& instance, LpResult lp, const RoundingConfig& config) {
    RequirementCutResult result;
    result.sigma = config.sigma_source == SigmaSource::exact ? sigma_exact(instance, config.exact_sigma_max_edges)
                                                             : sigma_upper_bound(instance);
    result.alpha = compute_alpha(result.sigma.log_sigma, config.c);
    result.scaled = scale_metric(lp.metric);
    result.lp = std::move(lp);

    const std::size_t trials = config.trials > 0 ? config.trials : default_trials(result.sigma.log_sigma);
    result.trials.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t)
        result.trials.push_back(
            round_once(instance, result.scaled, result.alpha, derive_seed(config.master_seed, t), t));

    // Ordered by (feasible first, cost, index) so the choice is schedule independent.
    const TrialReport* best_feasible = nullptr;
    const TrialReport* cheapest = nullptr;
    for (const TrialReport& t : result.trials) {
        if (!cheapest || t.cost < cheapest->cost) cheapest = &t;
        if (t.feasible && (!best_feasible || t.cost < best_feasible->cost)) best_feasible = &t;
    }
    if (best_feasible) {
        result.chosen_trial = best_feasible->index;
        result.solution = evaluate_cut(instance, best_feasible->cut);
    } else {
        result.repaired = true;
        result.solution = repair_cut(instance, result.scaled, cheapest ? cheapest->cut : EdgeSet{});
    }
    return result;
}

RequirementCutResult solve_requirement_cut(const Instance& instance, const RoundingConfig& config) {
    require_valid(instance);
    compute_alpha(0.0, config.c);  // reject a bad c before the LP work
    return round_lp_solution(instance, solve_relaxed_lp(instance, config.lp), config);
}

}  // namespace reqcut
