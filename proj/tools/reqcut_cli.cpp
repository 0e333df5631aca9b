// reqcut command-line front end. Talks to the library only through reqcut.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "reqcut/reqcut.h"

namespace {

using nlohmann::json;

struct Globals {
    std::uint64_t seed = 0;
    bool json_out = false;
    bool quiet = false;
};

struct CString {
    char* p = nullptr;
    ~CString() { reqcut_string_free(p); }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

struct InstanceHandle {
    reqcut_instance* p = nullptr;
    ~InstanceHandle() { reqcut_instance_free(p); }
};

// Thrown after a library call fails; carries the status as exit code.
struct Failure {
    int code;
};

void check(reqcut_status status) {
    if (status == REQCUT_OK) return;
    std::cerr << "reqcut: " << reqcut_last_error() << "\n";
    throw Failure{static_cast<int>(status)};
}

void load(const std::string& path, InstanceHandle& inst) { check(reqcut_instance_load(path.c_str(), &inst.p)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "reqcut: cannot open '" << path << "'\n";
        throw Failure{REQCUT_ERR_INPUT};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "reqcut: cannot write '" << path << "'\n";
        throw Failure{REQCUT_ERR_INPUT};
    }
    out << body;
}

std::string fmt_value(const json& v) {
    if (v.is_null()) return "-";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// Prints either the raw JSON document or "key: value" lines for `keys`.
void emit(const Globals& g, const std::string& doc, const std::vector<std::string>& keys) {
    if (g.json_out) {
        std::cout << doc << "\n";
        return;
    }
    if (g.quiet) return;
    json j = json::parse(doc);
    for (const std::string& k : keys)
        if (j.contains(k)) std::cout << k << ": " << fmt_value(j[k]) << "\n";
}

const std::vector<std::string> solve_keys{"cost",         "feasible", "cut",        "lp_opt", "ratio_lp",
                                          "log_sigma_hat", "alpha",    "trials",     "feasible_trials",
                                          "repaired",     "depth",    "embed_trials", "chosen_embedding"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Requirement Cut solver: LP relaxation, threshold rounding, spanning-tree counting, SP embeddings"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Globals g;
    app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
    app.add_flag("--json", g.json_out, "Print machine-readable JSON");
    app.add_flag("--quiet", g.quiet, "Suppress non-JSON output");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    std::string family, gen_out, sp_out;
    std::size_t n = 6, m = 8, k = 1, num_sets = 3, num_cycles = 2, cycle_len = 3, fanout = 2, path_len = 2;
    std::size_t groups = 1, group_size = 3;
    int depth = 2, requirement = 2, max_cost = 1;
    std::vector<std::string> elements;
    gen->add_option("family", family,
                    "setcover_star | short_cycles | bounded_fes | sp_depth | random_tree | random_connected")
        ->required();
    gen->add_option("-n,--n", n, "Vertices");
    gen->add_option("-m,--m", m, "Edges (random_connected)");
    gen->add_option("-k,--k", k, "Chords (bounded_fes)");
    gen->add_option("--num-sets", num_sets, "Sets (setcover_star)");
    gen->add_option("--element", elements, "Comma-separated set indices of one element (repeat per element)");
    gen->add_option("--num-cycles", num_cycles);
    gen->add_option("--cycle-len", cycle_len);
    gen->add_option("--depth", depth, "SP depth (sp_depth)");
    gen->add_option("--fanout", fanout);
    gen->add_option("--path-len", path_len);
    gen->add_option("--groups", groups, "Number of groups");
    gen->add_option("--group-size", group_size);
    gen->add_option("--requirement", requirement, "0 = random per group");
    gen->add_option("--max-cost", max_cost);
    gen->add_option("-o,--output", gen_out, "Instance file (stdout if omitted)");
    gen->add_option("--sp-output", sp_out, "SP expression file for sp_depth (default: <output>.sp)");

    auto* tau = app.add_subcommand("tau", "Count spanning trees");
    std::string path;
    tau->add_option("instance", path)->required();

    auto* sigma = app.add_subcommand("sigma", "Minimal Steiner tree count or its g*tau bound");
    bool sigma_exact = false;
    std::size_t sigma_max_edges = 24;
    sigma->add_option("instance", path)->required();
    sigma->add_flag("--exact", sigma_exact, "Enumerate minimal Steiner trees");
    sigma->add_option("--max-edges", sigma_max_edges);

    auto* lp = app.add_subcommand("lp", "Solve the relaxed LP");
    double tol = 0.0;
    lp->add_option("instance", path)->required();
    lp->add_option("--tol", tol, "Separation tolerance");

    reqcut_solve_options opts;
    reqcut_solve_options_default(&opts);
    std::string sigma_mode = "bound";
    auto add_solve_options = [&](CLI::App* cmd) {
        cmd->add_option("instance", path)->required();
        cmd->add_option("--c", opts.c, "Rounding constant (>= 4)");
        cmd->add_option("--trials", opts.trials, "Rounding trials (0 = default)");
        cmd->add_option("--sigma", sigma_mode, "exact | bound")->check(CLI::IsMember({"exact", "bound"}));
        cmd->add_option("--tol", opts.tol, "Separation tolerance");
    };
    auto* solve = app.add_subcommand("solve", "LP relaxation plus threshold rounding");
    add_solve_options(solve);
    auto* solve_sp = app.add_subcommand("solve-sp", "Spanning-tree embedding pipeline on an SP graph");
    add_solve_options(solve_sp);
    solve_sp->add_option("--embed-trials", opts.embed_trials);

    auto* embed = app.add_subcommand("embed", "Distortion table of the SP spanning-tree sampler (CSV)");
    std::size_t samples = 10000;
    embed->add_option("sp-file", path)->required();
    embed->add_option("--samples", samples)->capture_default_str();

    auto* exact = app.add_subcommand("exact", "Exact branch and bound");
    std::size_t max_edges = 20;
    double time_cap = 120.0;
    exact->add_option("instance", path)->required();
    exact->add_option("--max-edges", max_edges)->capture_default_str();
    exact->add_option("--time-cap", time_cap, "Seconds")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Run a benchmark plan");
    std::string bench_out;
    std::size_t threads = 0;
    bench->add_option("plan", path)->required();
    bench->add_option("-o,--output", bench_out, "Report stem (default: plan's \"output\")");
    bench->add_option("--threads", threads, "Worker threads (0 = REQCUT_THREADS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : REQCUT_ERR_INPUT;
    }

    try {
        opts.seed = g.seed;
        opts.sigma_exact = sigma_mode == "exact";

        if (*gen) {
            json spec = {{"family", family}, {"seed", g.seed}, {"n", n}, {"m", m}, {"k", k},
                         {"num_sets", num_sets}, {"num_cycles", num_cycles}, {"cycle_len", cycle_len},
                         {"depth", depth}, {"fanout", fanout}, {"path_len", path_len}, {"groups", groups},
                         {"group_size", group_size}, {"requirement", requirement}, {"max_cost", max_cost}};
            std::vector<std::vector<std::size_t>> memberships;
            for (const std::string& el : elements) {
                std::vector<std::size_t> sets;
                std::stringstream ss(el);
                for (std::string item; std::getline(ss, item, ',');) {
                    try {
                        sets.push_back(std::stoul(item));
                    } catch (const std::exception&) {
                        std::cerr << "reqcut: bad --element '" << el << "'\n";
                        return REQCUT_ERR_INPUT;
                    }
                }
                memberships.push_back(sets);
            }
            spec["memberships"] = memberships;
            CString inst, expr;
            check(reqcut_generate(spec.dump().c_str(), &inst.p, &expr.p));
            if (gen_out.empty()) {
                std::cout << inst.str();
                if (expr.p && !g.quiet) std::cout << "# sp: " << expr.str();
            } else {
                write_file(gen_out, inst.str());
                if (expr.p) write_file(sp_out.empty() ? gen_out + ".sp" : sp_out, expr.str());
                if (!g.quiet && !g.json_out) std::cout << "wrote " << gen_out << "\n";
                if (g.json_out) std::cout << json{{"instance", gen_out}}.dump() << "\n";
            }
        } else if (*tau) {
            InstanceHandle inst;
            load(path, inst);
            CString out;
            check(reqcut_tau(inst.p, &out.p));
            if (g.json_out || g.quiet) {
                emit(g, out.str(), {});
            } else {
                json j = json::parse(out.str());
                if (j["tau"].is_null())
                    std::cout << "log_tau=" << j["log_tau"].get<double>() << "\n";
                else
                    std::cout << j["tau"].get<std::string>() << "\n";
            }
        } else if (*sigma) {
            InstanceHandle inst;
            load(path, inst);
            CString out;
            check(reqcut_sigma(inst.p, sigma_exact, sigma_max_edges, &out.p));
            emit(g, out.str(), {"sigma", "log_sigma", "per_group", "g"});
        } else if (*lp) {
            InstanceHandle inst;
            load(path, inst);
            CString out;
            check(reqcut_lp(inst.p, tol, 0, &out.p));
            emit(g, out.str(), {"lp_opt", "iterations", "tree_cuts", "triangle_cuts", "edge_lengths"});
        } else if (*solve || *solve_sp) {
            InstanceHandle inst;
            load(path, inst);
            CString out;
            check(*solve ? reqcut_solve(inst.p, &opts, &out.p) : reqcut_solve_sp(inst.p, &opts, &out.p));
            emit(g, out.str(), solve_keys);
        } else if (*embed) {
            std::string expr = read_file(path);
            CString out;
            check(reqcut_embed(expr.c_str(), samples, g.seed, &out.p));
            if (!g.quiet || g.json_out) std::cout << out.str();
        } else if (*exact) {
            InstanceHandle inst;
            load(path, inst);
            CString out;
            check(reqcut_exact(inst.p, max_edges, time_cap, &out.p));
            emit(g, out.str(), {"cost", "cut", "feasible", "components_per_group"});
        } else if (*bench) {
            int any_error = 0;
            CString csv;
            check(reqcut_bench(path.c_str(), bench_out.c_str(), threads, &any_error, &csv.p));
            if (!g.quiet) std::cout << csv.str();
            if (any_error) {
                std::cerr << "reqcut: some bench rows failed\n";
                return 1;
            }
        }
    } catch (const Failure& f) {
        return f.code;
    }
    return 0;
}
