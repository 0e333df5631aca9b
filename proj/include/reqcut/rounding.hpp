#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "reqcut/graph.hpp"
#include "reqcut/metric_lp.hpp"
#include "reqcut/steiner.hpp"

namespace reqcut {

enum class SigmaSource { upper_bound, exact };

struct RoundingConfig {
    double c = 4.0;
    std::size_t trials = 0;  // 0 = default_trials(log sigma)
    std::uint64_t master_seed = 0;
    SigmaSource sigma_source = SigmaSource::upper_bound;
    std::size_t exact_sigma_max_edges = 24;
    LpOptions lp;
};

/// alpha = 1 / (c * max(1, log_sigma)). Throws ConfigError for c < 4.
double compute_alpha(double log_sigma, double c);

/// ceil(10 * log_sigma) clamped to [8, 256].
std::size_t default_trials(double log_sigma);

struct TrialReport {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    double threshold_min = 0.0;
    double threshold_max = 0.0;
    double threshold_mean = 0.0;
    EdgeSet cut;
    Rational cost;
    double cost_d = 0.0;
    bool feasible = false;
};

/// One pass of threshold rounding: x_e ~ U(0, alpha) keyed by (seed, edge id),
/// edge e is cut iff x_e <= d(e). Edges with d(e) >= alpha are always cut.
TrialReport round_once(const Instance& instance, const Metric& scaled, double alpha, std::uint64_t seed,
                       std::size_t index = 0);

/// Greedy completion: adds edges outside `start` by decreasing d(e) (ties by
/// ascending cost, then id) until every group is satisfied.
CutSolution repair_cut(const Instance& instance, const Metric& scaled, const EdgeSet& start);

struct RequirementCutResult {
    CutSolution solution;
    std::vector<TrialReport> trials;
    LpResult lp;
    Metric scaled;
    SigmaEstimate sigma;
    double alpha = 0.0;
    std::optional<std::size_t> chosen_trial;  // empty when repair was needed
    bool repaired = false;
};

/// Rounding stage on an already solved LP: scale, pick sigma per config, run
/// the trials and keep the cheapest feasible cut, repairing if none is.
RequirementCutResult round_lp_solution(const Instance& instance, LpResult lp, const RoundingConfig& config);

/// Full pipeline: relaxed LP, then round_lp_solution.
RequirementCutResult solve_requirement_cut(const Instance& instance, const RoundingConfig& config = {});

}  // namespace reqcut
