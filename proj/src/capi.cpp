#include "reqcut/reqcut.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "reqcut/bench.hpp"
#include "reqcut/errors.hpp"
#include "reqcut/exact_oracle.hpp"
#include "reqcut/instance_gen.hpp"
#include "reqcut/rounding.hpp"
#include "reqcut/sp_embed.hpp"
#include "reqcut/spantree.hpp"
#include "reqcut/steiner.hpp"

struct reqcut_instance {
    reqcut::Instance value;
};

namespace {

using nlohmann::json;
using namespace reqcut;

thread_local std::string last_error;

template <typename F>
reqcut_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return REQCUT_OK;
    } catch (const ResourceError& e) {
        last_error = e.what();
        return REQCUT_ERR_RESOURCE;
    } catch (const ConvergenceError& e) {
        last_error = e.what();
        return REQCUT_ERR_CONVERGENCE;
    } catch (const Error& e) {
        last_error = e.what();
        return REQCUT_ERR_INPUT;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return REQCUT_ERR_RESOURCE;
    } catch (const std::exception& e) {
        last_error = e.what();
        return REQCUT_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return REQCUT_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* p, const char* what) {
    if (!p) throw InputError(std::string(what) + " must not be null");
}

json nullable_number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json solution_json(const CutSolution& s) {
    return {{"cut", s.cut},
            {"cost", format_rational(s.cost)},
            {"cost_value", s.cost_d},
            {"feasible", s.feasible},
            {"components_per_group", s.components_per_group}};
}

RoundingConfig rounding_config(const reqcut_solve_options* opts) {
    reqcut_solve_options defaults;
    reqcut_solve_options_default(&defaults);
    const reqcut_solve_options& o = opts ? *opts : defaults;
    RoundingConfig cfg;
    cfg.c = o.c;
    cfg.trials = o.trials;
    cfg.master_seed = o.seed;
    cfg.sigma_source = o.sigma_exact ? SigmaSource::exact : SigmaSource::upper_bound;
    if (o.tol > 0) cfg.lp.separation_tol = o.tol;
    if (o.max_cuts > 0) cfg.lp.max_cuts = o.max_cuts;
    return cfg;
}

std::string opt_bigint(const std::optional<BigInt>& v) { return v ? v->str() : std::string(); }

}  // namespace

extern "C" {

const char* reqcut_version(void) { return "1.0.0"; }

const char* reqcut_last_error(void) { return last_error.c_str(); }

void reqcut_string_free(char* s) { std::free(s); }

reqcut_status reqcut_instance_load(const char* path, reqcut_instance** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new reqcut_instance{load_instance(path)};
    });
}

reqcut_status reqcut_instance_parse(const char* text, reqcut_instance** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new reqcut_instance{parse_instance(text)};
    });
}

void reqcut_instance_free(reqcut_instance* inst) { delete inst; }

reqcut_status reqcut_instance_info(const reqcut_instance* inst, size_t* n, size_t* m, size_t* g) {
    return guarded([&] {
        need(inst, "instance");
        if (n) *n = inst->value.graph.vertex_count();
        if (m) *m = inst->value.graph.edge_count();
        if (g) *g = inst->value.groups.size();
    });
}

reqcut_status reqcut_instance_format(const reqcut_instance* inst, int as_json, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        *out = dup(as_json ? format_instance_json(inst->value) : format_instance(inst->value));
    });
}

reqcut_status reqcut_instance_validate(const reqcut_instance* inst, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        *out = dup(json(validate(inst->value)).dump());
    });
}

void reqcut_solve_options_default(reqcut_solve_options* opts) {
    if (!opts) return;
    opts->c = 4.0;
    opts->trials = 0;
    opts->seed = 0;
    opts->sigma_exact = 0;
    opts->embed_trials = 8;
    opts->tol = 0.0;
    opts->max_cuts = 0;
}

reqcut_status reqcut_tau(const reqcut_instance* inst, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        const Graph& g = inst->value.graph;
        BigInt tau = count_spanning_trees_exact(g);
        json doc = {{"n", g.vertex_count()},
                    {"m", g.edge_count()},
                    {"tau", tau == 0 || msb(tau) < 512 ? json(tau.str()) : json(nullptr)},
                    {"log_tau", log_spanning_trees(g)},
                    {"feedback_edges", feedback_edge_number(g)}};
        *out = dup(doc.dump());
    });
}

reqcut_status reqcut_sigma(const reqcut_instance* inst, int exact, size_t max_edges, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        const Instance& in = inst->value;
        require_valid(in);
        json doc = {{"g", in.groups.size()}, {"exact", exact != 0}};
        if (exact) {
            std::vector<std::size_t> per_group;
            for (std::size_t i = 0; i < in.groups.size(); ++i)
                per_group.push_back(enumerate_minimal_steiner_trees(in, i, max_edges ? max_edges : 24).size());
            SigmaEstimate s = sigma_exact(in, max_edges ? max_edges : 24);
            doc["per_group"] = per_group;
            doc["sigma"] = opt_bigint(s.exact_sigma);
            doc["log_sigma"] = s.log_sigma;
        } else {
            SigmaEstimate s = sigma_upper_bound(in);
            doc["per_group"] = nullptr;
            doc["sigma"] = s.exact_sigma && msb(*s.exact_sigma) < 512 ? json(s.exact_sigma->str()) : json(nullptr);
            doc["log_sigma"] = s.log_sigma;
        }
        *out = dup(doc.dump());
    });
}

reqcut_status reqcut_lp(const reqcut_instance* inst, double tol, size_t max_cuts, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        const Instance& in = inst->value;
        require_valid(in);
        LpOptions opt;
        if (tol > 0) opt.separation_tol = tol;
        if (max_cuts > 0) opt.max_cuts = max_cuts;
        LpResult lp = solve_relaxed_lp(in, opt);
        Metric scaled = scale_metric(lp.metric);
        std::vector<double> lengths, scaled_lengths;
        for (const Edge& e : in.graph.edges()) {
            lengths.push_back(lp.metric(e.u, e.v));
            scaled_lengths.push_back(scaled(e.u, e.v));
        }
        json doc = {{"lp_opt", lp.objective},
                    {"iterations", lp.iterations},
                    {"tree_cuts", lp.active_tree_cuts.size()},
                    {"triangle_cuts", lp.triangle_cuts},
                    {"edge_lengths", lengths},
                    {"scaled_edge_lengths", scaled_lengths}};
        *out = dup(doc.dump());
    });
}

reqcut_status reqcut_solve(const reqcut_instance* inst, const reqcut_solve_options* opts, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        RoundingConfig cfg = rounding_config(opts);
        RequirementCutResult r = solve_requirement_cut(inst->value, cfg);
        std::vector<double> trial_costs;
        std::size_t feasible_trials = 0;
        for (const TrialReport& t : r.trials) {
            trial_costs.push_back(t.cost_d);
            feasible_trials += t.feasible ? 1 : 0;
        }
        json doc = solution_json(r.solution);
        doc["solver"] = "lp-round";
        doc["seed"] = cfg.master_seed;
        doc["lp_opt"] = r.lp.objective;
        doc["alpha"] = r.alpha;
        doc["log_sigma_hat"] = r.sigma.log_sigma;
        doc["trials"] = r.trials.size();
        doc["feasible_trials"] = feasible_trials;
        doc["trial_costs"] = trial_costs;
        doc["chosen_trial"] = r.chosen_trial ? json(*r.chosen_trial) : json(nullptr);
        doc["repaired"] = r.repaired;
        doc["ratio_lp"] = nullable_number(safe_ratio(r.solution.cost_d, r.lp.objective));
        *out = dup(doc.dump());
    });
}

reqcut_status reqcut_solve_sp(const reqcut_instance* inst, const reqcut_solve_options* opts, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        const Instance& in = inst->value;
        require_valid(in);
        auto terminals = find_sp_terminals(in.graph);
        if (!terminals) throw StructuralError("solve-sp: graph is not two-terminal series-parallel");
        RoundingConfig cfg = rounding_config(opts);
        std::size_t embed_trials = opts && opts->embed_trials ? opts->embed_trials : 8;
        SpPipelineResult r = solve_sp_pipeline(in, terminals->trace, cfg, embed_trials);
        LpResult lp = solve_relaxed_lp(in, cfg.lp);

        std::vector<double> costs;
        std::size_t repaired = 0;
        for (const EmbeddingReport& e : r.embeddings) {
            costs.push_back(e.graph_cost);
            repaired += e.repaired ? 1 : 0;
        }
        json doc = solution_json(r.solution);
        doc["solver"] = "sp-pipeline";
        doc["seed"] = cfg.master_seed;
        doc["lp_opt"] = lp.objective;
        doc["alpha"] = r.alpha;
        doc["log_sigma_hat"] = std::log(static_cast<double>(in.groups.size()));
        doc["source"] = terminals->source;
        doc["sink"] = terminals->sink;
        doc["depth"] = r.depth;
        doc["embed_trials"] = r.embeddings.size();
        doc["embedding_costs"] = costs;
        doc["repaired_embeddings"] = repaired;
        doc["chosen_embedding"] = r.chosen_embedding;
        doc["ratio_lp"] = nullable_number(safe_ratio(r.solution.cost_d, lp.objective));
        *out = dup(doc.dump());
    });
}

reqcut_status reqcut_exact(const reqcut_instance* inst, size_t max_edges, double time_cap_seconds, char** out) {
    if (out) *out = nullptr;
    return guarded([&] {
        need(inst, "instance");
        need(out, "out");
        OracleBudget budget;
        if (max_edges) budget.max_edges = max_edges;
        if (time_cap_seconds > 0) budget.time_cap_seconds = time_cap_seconds;
        json doc = solution_json(exact_solve(inst->value, budget));
        doc["solver"] = "exact";
        *out = dup(doc.dump());
    });
}

reqcut_status reqcut_embed(const char* expression, size_t samples, uint64_t seed, char** out_csv) {
    if (out_csv) *out_csv = nullptr;
    return guarded([&] {
        need(expression, "expression");
        need(out_csv, "out");
        SpInstance sp = parse_sp_expression(expression);
        const int depth = sp.trace.depth();
        std::ostringstream csv;
        csv.precision(17);
        csv << "edge,u,v,mean_stretch,std_error,bound\n";
        for (const EdgeStretch& s : estimate_distortion(sp, samples, seed))
            csv << s.edge << ',' << s.u << ',' << s.v << ',' << s.mean << ',' << s.std_error << ','
                << 2 * depth + 2 << '\n';
        *out_csv = dup(csv.str());
    });
}

reqcut_status reqcut_generate(const char* spec_json, char** out_instance, char** out_expression) {
    if (out_instance) *out_instance = nullptr;
    if (out_expression) *out_expression = nullptr;
    return guarded([&] {
        need(spec_json, "spec");
        need(out_instance, "out");
        Generated g = generate(parse_gen_spec(spec_json));
        std::string text = format_instance(g.instance);
        char* inst = dup(text);
        if (out_expression) {
            try {
                *out_expression = g.sp ? dup(g.sp->expression + "\n") : nullptr;
            } catch (...) {
                std::free(inst);
                throw;
            }
        }
        *out_instance = inst;
    });
}

reqcut_status reqcut_bench(const char* plan_path, const char* stem, size_t threads, int* any_error,
                           char** out_csv) {
    if (out_csv) *out_csv = nullptr;
    return guarded([&] {
        need(plan_path, "plan path");
        BenchPlan plan = load_bench_plan(plan_path);
        std::string out_stem = stem && *stem ? std::string(stem) : plan.output;
        if (out_stem.empty()) out_stem = std::filesystem::path(plan_path).replace_extension("").string() + ".report";
        BenchReport report = run_bench(plan, threads);
        write_bench_report(report, out_stem);
        if (any_error) *any_error = report.any_error() ? 1 : 0;
        if (out_csv) *out_csv = dup(report_csv(report));
    });
}

}  // extern "C"
