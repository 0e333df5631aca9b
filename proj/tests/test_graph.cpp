#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "oracles.hpp"
#include "reqcut/errors.hpp"
#include "reqcut/graph.hpp"
#include "reqcut/instance_gen.hpp"
#include "reqcut/random.hpp"

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

bool has(const std::vector<std::string>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("rationals parse exactly") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1e-2") == Rational(-1, 100));
    CHECK(parse_rational("2.5E1") == 25);
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(format_rational(Rational(3, 2)) == "3/2");
    CHECK(format_rational(Rational(7)) == "7");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("graph rejects self-loops, bad endpoints and negative costs") {
    Graph g(3);
    CHECK_THROWS_AS(g.add_edge(1, 1), InputError);
    CHECK_THROWS_AS(g.add_edge(0, 3), InputError);
    CHECK_THROWS_AS(g.add_edge(0, 1, -1), InputError);
    CHECK(g.add_edge(0, 1) == 0);
    CHECK(g.add_edge(0, 1) == 1);  // parallel edges are fine
    CHECK(g.edge(1).cost_d == 1.0);
}

TEST_CASE("components_per_group") {
    Instance tri = triangle(2);
    CHECK(components_per_group(tri, EdgeSet{}) == std::vector<int>{1});
    CHECK(components_per_group(tri, EdgeSet{0, 1, 2}) == std::vector<int>{3});

    Instance path;
    path.graph = Graph(3);
    path.graph.add_edge(0, 1);
    path.graph.add_edge(1, 2);
    path.groups.push_back(Group{{0, 2}, 2});
    CHECK(components_per_group(path, EdgeSet{0}) == std::vector<int>{2});
    CHECK_THROWS_AS(components_per_group(path, EdgeSet{5}), InputError);
}

TEST_CASE("evaluate_cut sums exact costs") {
    Instance inst = triangle(2);
    inst.graph = Graph(3);
    inst.graph.add_edge(0, 1, Rational(1, 3));
    inst.graph.add_edge(1, 2, Rational(1, 3));
    inst.graph.add_edge(0, 2, Rational(1, 3));
    CutSolution s = evaluate_cut(inst, EdgeSet{0, 1, 2});
    CHECK(s.cost == 1);
    CHECK(s.feasible);
    CHECK_FALSE(evaluate_cut(inst, EdgeSet{0}).feasible);
}

TEST_CASE("minimum spanning tree") {
    SUBCASE("tree input returns itself") {
        Graph g(4);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(1, 3);
        std::vector<double> w{2.0, 3.0, 4.0};
        auto t = minimum_spanning_tree(g, w);
        CHECK(t.edges == EdgeSet{0, 1, 2});
        CHECK(t.weight == doctest::Approx(9.0));
    }
    SUBCASE("triangle with weights 1, 2, 3") {
        Graph g(3);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        std::vector<double> w{1.0, 2.0, 3.0};
        auto t = minimum_spanning_tree(g, w);
        CHECK(t.edges == EdgeSet{0, 1});
        CHECK(t.weight == doctest::Approx(3.0));
    }
    SUBCASE("parallel tie goes to the lower id") {
        Graph g(2);
        g.add_edge(0, 1);
        g.add_edge(0, 1);
        std::vector<double> w{1.0, 1.0};
        CHECK(minimum_spanning_tree(g, w).edges == EdgeSet{0});
    }
    SUBCASE("disconnected") {
        Graph g(3);
        g.add_edge(0, 1);
        std::vector<double> w{1.0};
        CHECK_THROWS_AS(minimum_spanning_tree(g, w), StructuralError);
    }
}

TEST_CASE("validate") {
    CHECK(validate(triangle(2)).empty());
    CHECK(has(validate(triangle(1)), "requirement below 2"));
    CHECK(has(validate(triangle(4)), "requirement exceeds group size"));

    Instance bad = triangle(2);
    bad.groups.push_back(Group{{0, 7}, 2});
    CHECK(has(validate(bad), "out of range"));

    Instance none = triangle(2);
    none.groups.clear();
    CHECK(has(validate(none), "no terminal groups"));

    Instance split;
    split.graph = Graph(4);
    split.graph.add_edge(0, 1);
    split.graph.add_edge(2, 3);
    split.groups.push_back(Group{{0, 2}, 2});
    CHECK(has(validate(split), "disconnected"));
    CHECK_THROWS_AS(require_valid(split), InputError);

    Instance dup = triangle(2);
    dup.groups[0].members = {0, 0, 1};
    CHECK(has(validate(dup), "duplicate"));
}

TEST_CASE("instance text and JSON round trip") {
    const char* text = "# triangle\n3 3 1\n0 1 1\n1 2 1/2\n0 2 0.25\n2 3 2 0 1\n";
    Instance inst = parse_instance(text);
    CHECK(inst.graph.edge_count() == 3);
    CHECK(inst.graph.edge(1).cost == Rational(1, 2));
    CHECK(inst.groups[0].members == std::vector<Vertex>{0, 1, 2});
    Instance again = parse_instance(format_instance(inst));
    CHECK(format_instance(again) == format_instance(inst));
    Instance from_json = parse_instance(format_instance_json(inst));
    CHECK(format_instance(from_json) == format_instance(inst));

    CHECK_THROWS_AS(parse_instance("3 3 1\n0 1 1\n"), InputError);
    CHECK_THROWS_AS(parse_instance("2 1 1\n0 1 1\n2 2 0 1\nextra"), InputError);
    CHECK_THROWS_AS(parse_instance("{\"n\": 2, \"edges\": [[0, 1]]}"), InputError);
    CHECK_THROWS_AS(load_instance("/nonexistent/file.txt"), InputError);
}

TEST_CASE("property: component counts are bounded and monotone in the cut") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        SeqRng rng(s);
        GroupSpec spec{2, 3, 2};
        Instance inst = gen_random_connected(6, 9, s, spec);
        std::vector<EdgeId> cut;
        std::vector<int> prev = components_per_group(inst, cut);
        std::vector<EdgeId> order(inst.graph.edge_count());
        std::iota(order.begin(), order.end(), EdgeId{0});
        for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
        for (EdgeId id : order) {
            cut.push_back(id);
            auto cur = components_per_group(inst, normalize_edge_set(cut));
            for (std::size_t gi = 0; gi < cur.size(); ++gi) {
                CHECK(cur[gi] >= prev[gi]);
                CHECK(cur[gi] >= 1);
                CHECK(cur[gi] <= static_cast<int>(inst.groups[gi].members.size()));
            }
            prev = cur;
        }
    }
}

TEST_CASE("property: MST spans with n-1 edges and matches brute force weight") {
    for (std::uint64_t s = 0; s < 30; ++s) {
        Instance inst = gen_random_connected(6, 10, s + 100, {}, 1);
        SeqRng rng(s);
        std::vector<double> w;
        for (std::size_t i = 0; i < inst.graph.edge_count(); ++i) w.push_back(static_cast<double>(rng.between(0, 9)));
        auto t = minimum_spanning_tree(inst.graph, w);
        REQUIRE(t.edges.size() == 5);
        std::uint64_t mask = 0;
        for (EdgeId id : t.edges) mask |= std::uint64_t{1} << id;
        CHECK(oracle::is_spanning_tree(inst.graph, mask));
        double best = 1e18;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << inst.graph.edge_count()); ++m) {
            if (!oracle::is_spanning_tree(inst.graph, m)) continue;
            double sum = 0;
            for (std::size_t i = 0; i < w.size(); ++i)
                if (m >> i & 1) sum += w[i];
            best = std::min(best, sum);
        }
        CHECK(t.weight == doctest::Approx(best));
    }
}
