#include "reqcut/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "reqcut/errors.hpp"
#include "reqcut/random.hpp"
#include "reqcut/spantree.hpp"

namespace reqcut {

namespace {

using nlohmann::json;

std::string solver_name(BenchSolver s) {
    switch (s) {
        case BenchSolver::lp_round: return "lp-round";
        case BenchSolver::sp_pipeline: return "sp-pipeline";
        case BenchSolver::exact: return "exact";
    }
    return "?";
}

BenchSolver parse_solver(const std::string& name) {
    if (name == "lp-round") return BenchSolver::lp_round;
    if (name == "sp-pipeline") return BenchSolver::sp_pipeline;
    if (name == "exact") return BenchSolver::exact;
    throw InputError("bench plan: unknown solver '" + name + "'");
}

void apply_config(BenchRun& run, const json& cfg) {
    if (!cfg.is_object()) throw InputError("bench plan: config must be an object");
    for (auto& [key, value] : cfg.items()) {
        if (key == "c") run.rounding.c = value.get<double>();
        else if (key == "trials") run.rounding.trials = value.get<std::size_t>();
        else if (key == "sigma") {
            auto s = value.get<std::string>();
            if (s == "bound") run.rounding.sigma_source = SigmaSource::upper_bound;
            else if (s == "exact") run.rounding.sigma_source = SigmaSource::exact;
            else throw InputError("bench plan: sigma must be 'bound' or 'exact'");
        } else if (key == "embed_trials") run.embed_trials = value.get<std::size_t>();
        else if (key == "max_edges") run.budget.max_edges = value.get<std::size_t>();
        else if (key == "time_cap") run.budget.time_cap_seconds = value.get<double>();
        else if (key == "exact") run.compute_exact = value.get<bool>();
        else if (key == "seed") run.seed = value.get<std::uint64_t>();
        else if (key == "tol") run.rounding.lp.separation_tol = value.get<double>();
        else if (key == "max_cuts") run.rounding.lp.max_cuts = value.get<std::size_t>();
        else throw InputError("bench plan: unknown config key '" + key + "'");
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : ""; }

int error_class(const std::exception& e) {
    if (dynamic_cast<const ResourceError*>(&e)) return 3;
    if (dynamic_cast<const ConvergenceError*>(&e)) return 4;
    if (dynamic_cast<const Error*>(&e)) return 2;
    return 1;
}

void execute(const BenchPlan& plan, std::size_t index, BenchRow& row) {
    const BenchRun& run = plan.runs[index];
    const Instance& inst = plan.instances[index];
    RoundingConfig cfg = run.rounding;
    cfg.master_seed = row.seed;

    row.n = inst.graph.vertex_count();
    row.m = inst.graph.edge_count();
    row.g = inst.groups.size();
    require_valid(inst);
    row.log_tau = log_spanning_trees(inst.graph);
    BigInt tau = count_spanning_trees_exact(inst.graph);
    if (tau == 0 || msb(tau) < 512) row.tau = tau.str();

    LpResult lp = solve_relaxed_lp(inst, cfg.lp);
    row.lp_opt = lp.objective;

    std::optional<CutSolution> exact;
    auto solve_exact = [&] {
        if (!exact) exact = exact_solve(inst, run.budget);
        return *exact;
    };

    CutSolution solution;
    switch (run.solver) {
        case BenchSolver::lp_round: {
            RequirementCutResult r = round_lp_solution(inst, std::move(lp), cfg);
            row.log_sigma_hat = r.sigma.log_sigma;
            solution = std::move(r.solution);
            break;
        }
        case BenchSolver::sp_pipeline: {
            const std::optional<CompositionTrace>& trace = plan.traces[index];
            if (!trace) throw StructuralError("sp-pipeline: graph is not two-terminal series-parallel");
            SpPipelineResult r = solve_sp_pipeline(inst, *trace, cfg, run.embed_trials);
            row.log_sigma_hat = std::log(static_cast<double>(row.g));
            solution = std::move(r.solution);
            break;
        }
        case BenchSolver::exact:
            row.log_sigma_hat = sigma_upper_bound(inst).log_sigma;
            solution = solve_exact();
            break;
    }
    row.cost = solution.cost_d;
    row.feasible = solution.feasible;
    row.ratio_lp = safe_ratio(row.cost, row.lp_opt);
    if (run.solver == BenchSolver::exact || (run.compute_exact && row.m <= run.budget.max_edges)) {
        row.exact = solve_exact().cost_d;
        row.ratio_exact = safe_ratio(row.cost, *row.exact);
    }
    row.ok = true;
}

}  // namespace

bool BenchReport::any_error() const {
    return std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return !r.ok; });
}

BenchPlan parse_bench_plan(std::string_view text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("bench plan: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("runs") || !doc["runs"].is_array())
        throw InputError("bench plan: expected an object with a 'runs' array");

    BenchPlan plan;
    try {
        plan.seed = doc.value("seed", std::uint64_t{0});
        plan.output = doc.value("output", std::string{});
        std::size_t index = 0;
        for (const json& r : doc["runs"]) {
            BenchRun run;
            run.solver = parse_solver(r.value("solver", std::string("lp-round")));
            if (r.contains("config")) apply_config(run, r["config"]);

            std::optional<CompositionTrace> trace;
            if (r.contains("instance") == r.contains("gen"))
                throw InputError("bench plan: run " + std::to_string(index) + " needs exactly one of instance/gen");
            if (r.contains("instance")) {
                run.source = r["instance"].get<std::string>();
                std::filesystem::path p(run.source);
                if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
                plan.instances.push_back(load_instance(p.string()));
            } else {
                GenSpec spec = parse_gen_spec(r["gen"].dump());
                if (!r["gen"].contains("seed")) spec.seed = derive_seed(plan.seed ^ 0x6a09e667f3bcc909ull, index);
                run.source = "gen:" + family_name(spec.family);
                run.gen = spec;
                Generated gen = generate(spec);
                plan.instances.push_back(std::move(gen.instance));
                if (gen.sp) trace = gen.sp->sp.trace;
            }
            if (run.solver == BenchSolver::sp_pipeline && !trace) {
                if (auto found = find_sp_terminals(plan.instances.back().graph)) trace = std::move(found->trace);
            }
            plan.traces.push_back(std::move(trace));
            plan.runs.push_back(std::move(run));
            ++index;
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bench plan: ") + e.what());
    }
    return plan;
}

BenchPlan load_bench_plan(const std::string& path) {
    std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_bench_plan(read_file(path), dir.empty() ? "." : dir);
}

std::size_t bench_thread_count(std::size_t requested) {
    std::size_t threads = requested;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("REQCUT_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v > 0) threads = std::min<std::size_t>(threads, static_cast<std::size_t>(v));
        }
    }
    return std::max<std::size_t>(1, threads);
}

BenchReport run_bench(const BenchPlan& plan, std::size_t threads) {
    BenchReport report;
    report.seed = plan.seed;
    report.rows.resize(plan.runs.size());
    for (std::size_t i = 0; i < plan.runs.size(); ++i) {
        BenchRow& row = report.rows[i];
        row.index = i;
        row.source = plan.runs[i].source;
        row.solver = solver_name(plan.runs[i].solver);
        row.seed = plan.runs[i].seed.value_or(derive_seed(plan.seed, i));
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < plan.runs.size();) {
            BenchRow& row = report.rows[i];
            auto start = std::chrono::steady_clock::now();
            try {
                execute(plan, i, row);
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
                row.error_code = error_class(e);
            }
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };
    const std::size_t count = std::min(bench_thread_count(threads), std::max<std::size_t>(1, plan.runs.size()));
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    return report;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

std::string report_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "index,source,solver,seed,status,n,m,g,tau,log_tau,log_sigma_hat,lp_opt,cost,feasible,exact,"
           "ratio_lp,ratio_exact,error\n";
    for (const BenchRow& r : report.rows) {
        out << r.index << ',' << csv_field(r.source) << ',' << r.solver << ',' << r.seed << ','
            << (r.ok ? "ok" : "error") << ',' << r.n << ',' << r.m << ',' << r.g << ',' << r.tau << ','
            << num(r.log_tau) << ',' << num(r.log_sigma_hat) << ',' << num(r.lp_opt) << ',' << num(r.cost) << ','
            << (r.feasible ? 1 : 0) << ',' << opt_num(r.exact) << ',' << opt_num(r.ratio_lp) << ','
            << opt_num(r.ratio_exact) << ',' << csv_field(r.error) << '\n';
    }
    return out.str();
}

std::string report_json(const BenchReport& report) {
    json rows = json::array();
    auto opt = [](const std::optional<double>& x) -> json { return x ? json(*x) : json(nullptr); };
    for (const BenchRow& r : report.rows) {
        json row = {{"index", r.index},   {"source", r.source}, {"solver", r.solver}, {"seed", r.seed},
                    {"status", r.ok ? "ok" : "error"}};
        if (!r.ok) {
            row["error"] = r.error;
            row["error_code"] = r.error_code;
        }
        row["n"] = r.n;
        row["m"] = r.m;
        row["g"] = r.g;
        row["tau"] = r.tau.empty() ? json(nullptr) : json(r.tau);
        row["log_tau"] = r.log_tau;
        row["log_sigma_hat"] = r.log_sigma_hat;
        row["lp_opt"] = r.lp_opt;
        row["cost"] = r.cost;
        row["feasible"] = r.feasible;
        row["exact"] = opt(r.exact);
        row["ratio_lp"] = opt(r.ratio_lp);
        row["ratio_exact"] = opt(r.ratio_exact);
        rows.push_back(std::move(row));
    }
    json doc = {{"seed", report.seed}, {"rows", std::move(rows)}};
    return doc.dump(2) + "\n";
}

std::string timing_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "index,seconds\n";
    for (const BenchRow& r : report.rows) out << r.index << ',' << num(r.seconds) << '\n';
    return out.str();
}

void write_bench_report(const BenchReport& report, const std::string& stem) {
    auto write = [](const std::string& path, const std::string& body) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError("cannot write '" + path + "'");
        out << body;
    };
    write(stem + ".csv", report_csv(report));
    write(stem + ".json", report_json(report));
    write(stem + ".timing.csv", timing_csv(report));
}

}  // namespace reqcut
