#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <optional>
#include <limits>

#include "oracles.hpp"
#include "reqcut/errors.hpp"
#include "reqcut/exact_oracle.hpp"
#include "reqcut/instance_gen.hpp"
#include "reqcut/lp_core.hpp"
#include "reqcut/metric_lp.hpp"
#include "reqcut/random.hpp"
#include "reqcut/steiner.hpp"

using namespace reqcut;

namespace {

Instance triangle(int r) {
    Instance inst;
    inst.graph = Graph(3);
    inst.graph.add_edge(0, 1);
    inst.graph.add_edge(1, 2);
    inst.graph.add_edge(0, 2);
    inst.groups.push_back(Group{{0, 1, 2}, r});
    return inst;
}

// Maximum of c.x over {A x <= b, x >= 0} in two variables by checking every
// intersection of two boundary lines.
std::optional<double> vertex_scan_2d(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                                     const std::vector<double>& c) {
    std::vector<std::array<double, 3>> lines;  // p x + q y = r
    for (std::size_t i = 0; i < a.size(); ++i) lines.push_back({a[i][0], a[i][1], b[i]});
    lines.push_back({1, 0, 0});
    lines.push_back({0, 1, 0});
    std::optional<double> best;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            double det = lines[i][0] * lines[j][1] - lines[i][1] * lines[j][0];
            if (std::abs(det) < 1e-12) continue;
            double x = (lines[i][2] * lines[j][1] - lines[i][1] * lines[j][2]) / det;
            double y = (lines[i][0] * lines[j][2] - lines[i][2] * lines[j][0]) / det;
            if (x < -1e-9 || y < -1e-9) continue;
            bool ok = true;
            for (std::size_t k = 0; k < a.size(); ++k)
                if (a[k][0] * x + a[k][1] * y > b[k] + 1e-9) ok = false;
            if (!ok) continue;
            double v = c[0] * x + c[1] * y;
            if (!best || v > *best) best = v;
        }
    return best;
}

// Grid search over the three pair lengths of the unit triangle whose terminal
// clique is the triangle itself.
double triangle_grid_optimum(int r) {
    const int steps = 20;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps; ++j)
            for (int k = 0; k <= steps; ++k) {
                double a = i / double(steps), b = j / double(steps), c = k / double(steps);
                if (a > b + c + 1e-12 || b > a + c + 1e-12 || c > a + b + 1e-12) continue;
                if (a + b < r - 1 - 1e-12 || b + c < r - 1 - 1e-12 || a + c < r - 1 - 1e-12) continue;
                best = std::min(best, a + b + c);
            }
    return best;
}

}  // namespace

TEST_CASE("dense simplex small problems") {
    // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    LpSolution s = DenseSimplex({{1, 1}, {1, 3}, {1, 0}}, {4, 6, 3}, {3, 2}).solve();
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective == doctest::Approx(11.0));
    CHECK(s.x[0] == doctest::Approx(3.0));
    CHECK(s.x[1] == doctest::Approx(1.0));

    // Negative right-hand side: x >= 2 written as -x <= -2; minimize x.
    LpSolution t = DenseSimplex({{-1}}, {-2}, {-1}).solve();
    REQUIRE(t.status == LpStatus::optimal);
    CHECK(t.objective == doctest::Approx(-2.0));

    CHECK(DenseSimplex({{1}, {-1}}, {1, -2}, {1}).solve().status == LpStatus::infeasible);
    CHECK(DenseSimplex({{-1}}, {1}, {1}).solve().status == LpStatus::unbounded);
}

TEST_CASE("property: simplex matches a 2D vertex scan") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        SeqRng rng(s);
        std::size_t rows = 1 + rng.below(5);
        std::vector<std::vector<double>> a(rows, std::vector<double>(2));
        std::vector<double> b(rows), c(2);
        for (auto& row : a)
            for (double& v : row) v = static_cast<double>(rng.between(-4, 6));
        for (double& v : b) v = static_cast<double>(rng.between(-3, 10));
        for (double& v : c) v = static_cast<double>(rng.between(-3, 5));
        // Box keeps everything bounded so the scan sees the optimum.
        a.push_back({1, 0});
        a.push_back({0, 1});
        b.push_back(20);
        b.push_back(20);
        LpSolution sol = DenseSimplex(a, b, c).solve();
        auto ref = vertex_scan_2d(a, b, c);
        if (!ref) {
            CHECK(sol.status == LpStatus::infeasible);
        } else {
            REQUIRE(sol.status == LpStatus::optimal);
            CHECK(sol.objective == doctest::Approx(*ref).epsilon(1e-7));
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(a[i][0] * sol.x[0] + a[i][1] * sol.x[1] <= b[i] + 1e-9);
        }
    }
}

TEST_CASE("augmented graph") {
    Instance inst;
    inst.graph = Graph(4);
    inst.graph.add_edge(0, 1);
    inst.graph.add_edge(1, 2);
    inst.graph.add_edge(2, 3);
    inst.groups.push_back(Group{{0, 2, 3}, 2});
    AugmentedGraph aug = augment_group(inst, 0);
    CHECK(aug.base_edge_count == 3);
    REQUIRE(aug.graph.edge_count() == 5);  // (0,2) and (0,3) added; (2,3) exists
    CHECK(aug.graph.edge(3).u == 0);
    CHECK(aug.graph.edge(3).v == 2);
    CHECK(aug.graph.edge(4).v == 3);
    CHECK(aug.graph.edge(3).cost == 0);
    CHECK(aug.is_synthetic(4));
    CHECK_FALSE(aug.is_synthetic(2));
}

TEST_CASE("separation oracle") {
    Instance tri = triangle(3);
    AugmentedGraph aug = augment_group(tri, 0);
    CHECK_FALSE(separation_oracle(aug, Metric(3, 1.0), 2).has_value());
    auto zero = separation_oracle(aug, Metric(3, 0.0), 2);
    REQUIRE(zero.has_value());
    CHECK(zero->length == doctest::Approx(0.0));
    CHECK(zero->edges.size() == 2);

    Metric d(3, 0.0);
    d.set(0, 1, 1.0);
    auto cut = separation_oracle(aug, d, 3);
    REQUIRE(cut.has_value());
    CHECK(cut->length == doctest::Approx(0.0));  // two zero pairs; the MST is the most violated tree
    CHECK(cut->edges == EdgeSet{1, 2});  // the two zero pairs
}

TEST_CASE("relaxed LP known values") {
    Instance single;
    single.graph = Graph(2);
    single.graph.add_edge(0, 1, 5);
    single.groups.push_back(Group{{0, 1}, 2});
    LpResult s = solve_relaxed_lp(single);
    CHECK(s.objective == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(s.metric(0, 1) == doctest::Approx(1.0));

    LpResult r3 = solve_relaxed_lp(triangle(3));
    CHECK(std::abs(r3.objective - 3.0) <= 1e-6);
    LpResult r2 = solve_relaxed_lp(triangle(2));
    CHECK(std::abs(r2.objective - 1.5) <= 1e-6);
    for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}}) CHECK(r2.metric(u, v) == doctest::Approx(0.5));

    // Independent grid oracle over the same constraint family.
    CHECK(triangle_grid_optimum(2) == doctest::Approx(1.5));
    CHECK(triangle_grid_optimum(3) == doctest::Approx(3.0));
    CHECK(metric_cost(triangle(2).graph, r2.metric) == doctest::Approx(r2.objective));
}

TEST_CASE("relaxed LP rejects invalid instances") {
    CHECK_THROWS_AS(solve_relaxed_lp(triangle(4)), InputError);
    LpOptions tight;
    tight.max_cuts = 1;
    CHECK_THROWS_AS(solve_relaxed_lp(gen_random_connected(6, 10, 3, {2, 4, 3}), tight), ConvergenceError);
}

TEST_CASE("scale metric") {
    Metric d(4, 0.0);
    d.set(0, 1, 0.2);
    d.set(1, 2, 0.6);
    d.set(2, 3, 0.9);
    d.set(0, 3, 0.5);
    Metric s = scale_metric(d);
    CHECK(s(0, 1) == doctest::Approx(0.4));
    CHECK(s(1, 2) == doctest::Approx(1.0));
    CHECK(s(2, 3) == doctest::Approx(1.0));
    CHECK(s(0, 3) == doctest::Approx(1.0));
    CHECK(s(0, 2) == 0.0);
}

TEST_CASE("cut equivalence examples") {
    Instance tri = triangle(3);
    auto all = check_cut_equivalence(tri, 0, EdgeSet{0, 1, 2});
    CHECK(all.components_ok);
    CHECK(all.all_trees_cut);
    auto one = check_cut_equivalence(tri, 0, EdgeSet{0});
    CHECK_FALSE(one.components_ok);
    CHECK_FALSE(one.all_trees_cut);

    Instance path;
    path.graph = Graph(4);
    path.graph.add_edge(0, 1);
    path.graph.add_edge(1, 2);
    path.graph.add_edge(2, 3);
    path.groups.push_back(Group{{0, 3}, 2});
    auto p = check_cut_equivalence(path, 0, EdgeSet{1});
    CHECK(p.components_ok);
    CHECK(p.all_trees_cut);
}

TEST_CASE("property: LP is a certified lower bound on the oracle suite") {
    auto suite = oracle_suite(60, 9);
    for (const Instance& inst : suite) {
        LpResult lp = solve_relaxed_lp(inst);
        CHECK(lp.objective <= to_double(exact_solve(inst).cost) + 1e-6);
        CHECK(lp.objective == doctest::Approx(metric_cost(inst.graph, lp.metric)).epsilon(1e-7));

        // Fresh separation pass plus random triples.
        for (std::size_t gi = 0; gi < inst.groups.size(); ++gi)
            CHECK_FALSE(separation_oracle(augment_group(inst, gi), lp.metric, inst.groups[gi].requirement, 1e-6));
        SeqRng rng(lp.iterations);
        const std::size_t n = inst.graph.vertex_count();
        for (int t = 0; t < 10000; ++t) {
            Vertex u = rng.below(n), v = rng.below(n), w = rng.below(n);
            CHECK(lp.metric(u, w) <= lp.metric(u, v) + lp.metric(v, w) + 1e-6);
        }
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = 0; v < n; ++v) {
                CHECK(lp.metric(u, v) >= 0.0);
                CHECK(lp.metric(u, v) <= 1.0);
            }

        // Scaled metric: every minimal Steiner tree of a group is long enough.
        Metric scaled = scale_metric(lp.metric);
        for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
            double shortest = std::numeric_limits<double>::infinity();
            for (const SteinerTree& t : enumerate_minimal_steiner_trees(inst, gi)) {
                double len = 0;
                for (EdgeId id : t.edges) len += scaled(inst.graph.edge(id).u, inst.graph.edge(id).v);
                shortest = std::min(shortest, len);
            }
            CHECK(shortest >= inst.groups[gi].requirement - 1 - 1e-6);
        }
    }
}

TEST_CASE("property: component counts agree with spanning tree cut counts") {
    for (std::uint64_t s = 0; s < 300; ++s) {
        SeqRng rng(s);
        std::size_t n = 3 + rng.below(4);
        std::size_t m = std::min<std::size_t>(n * (n - 1) / 2, n - 1 + rng.below(4));
        Instance inst = gen_random_connected(n, m, rng.next(), {1, 2 + rng.below(n - 1), 0});
        std::vector<EdgeId> cut;
        for (EdgeId id = 0; id < inst.graph.edge_count(); ++id)
            if (rng.below(2)) cut.push_back(id);
        auto eq = check_cut_equivalence(inst, 0, cut);
        CHECK(eq.components_ok == eq.all_trees_cut);
    }
}
