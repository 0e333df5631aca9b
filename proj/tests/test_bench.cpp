#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "reqcut/bench.hpp"
#include "reqcut/errors.hpp"
#include "reqcut/random.hpp"
#include "json.hpp"

using namespace reqcut;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "reqcut_test_bench";
    fs::create_directories(dir);
    Instance tri;
    tri.graph = Graph(3);
    tri.graph.add_edge(0, 1);
    tri.graph.add_edge(1, 2);
    tri.graph.add_edge(0, 2);
    tri.groups.push_back(Group{{0, 1, 2}, 2});
    std::ofstream(dir / "tri.txt") << format_instance(tri);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kMixedPlan = R"({
  "seed": 7,
  "runs": [
    {"instance": "tri.txt", "solver": "exact"},
    {"instance": "tri.txt", "solver": "lp-round", "config": {"trials": 12}},
    {"gen": {"family": "short_cycles", "num_cycles": 2, "cycle_len": 4, "group_size": 3}, "solver": "lp-round"},
    {"gen": {"family": "sp_depth", "depth": 3, "path_len": 2}, "solver": "sp-pipeline", "config": {"embed_trials": 4}},
    {"gen": {"family": "random_connected", "n": 7, "m": 10, "max_cost": 4, "groups": 2}, "solver": "lp-round"},
    {"gen": {"family": "bounded_fes", "n": 9, "k": 2}, "solver": "exact"},
    {"gen": {"family": "short_cycles", "num_cycles": 3, "cycle_len": 4}, "solver": "sp-pipeline"},
    {"gen": {"family": "setcover_star", "num_sets": 3, "memberships": [[0, 1], [2]]}, "solver": "lp-round"}
  ]
})";

}  // namespace

TEST_CASE("single exact row on the triangle") {
    fs::path dir = scratch_dir();
    BenchPlan plan = parse_bench_plan(R"({"runs": [{"instance": "tri.txt", "solver": "exact"}]})", dir.string());
    BenchReport report = run_bench(plan, 1);
    REQUIRE(report.rows.size() == 1);
    const BenchRow& row = report.rows[0];
    CHECK(row.ok);
    CHECK(row.cost == 2.0);
    CHECK(row.lp_opt == doctest::Approx(1.5));
    CHECK(row.tau == "3");
    REQUIRE(row.ratio_exact);
    CHECK(*row.ratio_exact == doctest::Approx(1.0));
    CHECK_FALSE(report.any_error());
}

TEST_CASE("mixed plan: ratios, ordering and row seeds") {
    fs::path dir = scratch_dir();
    BenchPlan plan = parse_bench_plan(kMixedPlan, dir.string());
    BenchReport report = run_bench(plan, 2);
    REQUIRE(report.rows.size() == 8);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const BenchRow& row = report.rows[i];
        INFO("row " << i << ": " << row.error);
        CHECK(row.index == i);
        CHECK(row.ok);
        CHECK(row.feasible);
        CHECK(row.seed == derive_seed(7, i));
        if (row.ratio_exact) CHECK(*row.ratio_exact >= 1.0 - 1e-12);
        if (row.ratio_lp) CHECK(*row.ratio_lp >= 1.0 - 1e-9);  // LP is a lower bound
    }
    CHECK(report.rows[2].tau == "16");
    CHECK(report.rows[2].source == "gen:short_cycles");
    CHECK(report.rows[3].solver == "sp-pipeline");
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    fs::path dir = scratch_dir();
    BenchPlan plan = parse_bench_plan(kMixedPlan, dir.string());
    BenchReport one = run_bench(plan, 1);
    BenchReport eight = run_bench(plan, 8);
    BenchReport again = run_bench(parse_bench_plan(kMixedPlan, dir.string()), 3);
    CHECK(report_csv(one) == report_csv(eight));
    CHECK(report_json(one) == report_json(eight));
    CHECK(report_csv(one) == report_csv(again));

    write_bench_report(one, (dir / "a").string());
    write_bench_report(eight, (dir / "b").string());
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
    CHECK(fs::exists(dir / "a.timing.csv"));

    auto doc = nlohmann::json::parse(report_json(one));
    CHECK(doc["rows"].size() == 8);
    CHECK(doc["seed"] == 7);
}

TEST_CASE("failing rows are reported, not thrown") {
    fs::path dir = scratch_dir();
    BenchPlan plan = parse_bench_plan(R"({"runs": [
        {"gen": {"family": "random_connected", "n": 8, "m": 24}, "solver": "exact", "config": {"max_edges": 20}},
        {"gen": {"family": "random_connected", "n": 5, "m": 10}, "solver": "sp-pipeline"},
        {"instance": "tri.txt", "solver": "lp-round", "config": {"c": 2}},
        {"instance": "tri.txt", "solver": "lp-round"}
    ]})",
                                      dir.string());
    BenchReport report = run_bench(plan, 2);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.any_error());
    CHECK_FALSE(report.rows[0].ok);
    CHECK(report.rows[0].error_code == 3);
    CHECK_FALSE(report.rows[1].ok);  // K5 has no two-terminal SP decomposition
    CHECK(report.rows[1].error_code == 2);
    CHECK_FALSE(report.rows[2].ok);
    CHECK(report.rows[2].error_code == 2);
    CHECK(report.rows[3].ok);
    CHECK(report_csv(report).find(",error,") != std::string::npos);
}

TEST_CASE("plan errors") {
    fs::path dir = scratch_dir();
    CHECK_THROWS_AS(parse_bench_plan("[]", dir.string()), InputError);
    CHECK_THROWS_AS(parse_bench_plan(R"({"runs": [{"solver": "exact"}]})", dir.string()), InputError);
    CHECK_THROWS_AS(parse_bench_plan(R"({"runs": [{"instance": "missing.txt"}]})", dir.string()), InputError);
    CHECK_THROWS_AS(parse_bench_plan(R"({"runs": [{"instance": "tri.txt", "solver": "magic"}]})", dir.string()),
                    InputError);
    CHECK_THROWS_AS(
        parse_bench_plan(R"({"runs": [{"instance": "tri.txt", "config": {"bogus": 1}}]})", dir.string()),
        InputError);
    CHECK(bench_thread_count(3) == 3);
    CHECK(bench_thread_count(0) >= 1);
}
