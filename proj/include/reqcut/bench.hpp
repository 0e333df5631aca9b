#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reqcut/exact_oracle.hpp"
#include "reqcut/instance_gen.hpp"
#include "reqcut/rounding.hpp"

namespace reqcut {

enum class BenchSolver { lp_round, sp_pipeline, exact };

struct BenchRun {
    std::string source;  // instance path as written in the plan, or "gen:<family>"
    std::optional<GenSpec> gen;
    BenchSolver solver = BenchSolver::lp_round;
    RoundingConfig rounding;
    std::size_t embed_trials = 8;
    OracleBudget budget;
    bool compute_exact = true;  // exact optimum column when affordable
    std::optional<std::uint64_t> seed;  // overrides the derived per-row seed
};

/// Plan file (JSON):
///   {"seed": 1, "output": "report",
///    "runs": [{"instance": "tri.txt" | "gen": {...}, "solver": "lp-round",
///              "config": {"c": 4, "trials": 16, "sigma": "bound", ...}}]}
/// Instance paths are resolved relative to `base_dir`.
struct BenchPlan {
    std::uint64_t seed = 0;
    std::string output;
    std::vector<BenchRun> runs;
    std::vector<Instance> instances;  // resolved before any run starts, one per run
    std::vector<std::optional<CompositionTrace>> traces;
};

BenchPlan parse_bench_plan(std::string_view json, const std::string& base_dir = ".");
BenchPlan load_bench_plan(const std::string& path);

struct BenchRow {
    std::size_t index = 0;
    std::string source;
    std::string solver;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;       // exception category and message when !ok
    int error_code = 0;      // CLI exit-code class of the error
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t g = 0;
    std::string tau;         // exact when it fits in 512 bits, else empty
    double log_tau = 0.0;
    double log_sigma_hat = 0.0;
    double lp_opt = 0.0;
    double cost = 0.0;
    bool feasible = false;
    std::optional<double> exact;
    std::optional<double> ratio_lp;
    std::optional<double> ratio_exact;
    double seconds = 0.0;    // wall time; only written to the timing sidecar
};

struct BenchReport {
    std::uint64_t seed = 0;
    std::vector<BenchRow> rows;
    bool any_error() const;
};

/// Runs every row, `threads` at a time (0 = REQCUT_THREADS or hardware
/// concurrency). Rows come back in plan order.
BenchReport run_bench(const BenchPlan& plan, std::size_t threads = 0);

std::string report_csv(const BenchReport& report);
std::string report_json(const BenchReport& report);
std::string timing_csv(const BenchReport& report);

/// Writes <stem>.csv, <stem>.json and <stem>.timing.csv.
void write_bench_report(const BenchReport& report, const std::string& stem);

std::size_t bench_thread_count(std::size_t requested);

}  // namespace reqcut
