#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "reqcut/errors.hpp"
#include "reqcut/instance_gen.hpp"
#include "reqcut/spantree.hpp"
#include "reqcut/steiner.hpp"

using namespace reqcut;

namespace {

Instance with_groups(Graph g, std::vector<Group> groups) {
    Instance inst;
    inst.graph = std::move(g);
    inst.groups = std::move(groups);
    return inst;
}

Graph complete(std::size_t n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("minimal steiner tree enumeration") {
    SUBCASE("tree graph has one tree per group") {
        Graph t(5);
        t.add_edge(0, 1);
        t.add_edge(1, 2);
        t.add_edge(1, 3);
        t.add_edge(3, 4);
        Instance inst = with_groups(t, {Group{{0, 4}, 2}});
        auto trees = enumerate_minimal_steiner_trees(inst, 0);
        REQUIRE(trees.size() == 1);
        CHECK(trees[0].edges == EdgeSet{0, 2, 3});
        CHECK(trees[0].vertices == std::vector<Vertex>{0, 1, 3, 4});
    }
    SUBCASE("K3 with all three terminals") {
        Instance inst = with_groups(complete(3), {Group{{0, 1, 2}, 2}});
        CHECK(enumerate_minimal_steiner_trees(inst, 0).size() == 3);
    }
    SUBCASE("star K_{1,3} with the leaves as terminals") {
        Graph star(4);
        star.add_edge(0, 1);
        star.add_edge(0, 2);
        star.add_edge(0, 3);
        Instance inst = with_groups(star, {Group{{1, 2, 3}, 2}});
        auto trees = enumerate_minimal_steiner_trees(inst, 0);
        REQUIRE(trees.size() == 1);
        CHECK(trees[0].edges == EdgeSet{0, 1, 2});
    }
    SUBCASE("budget") {
        Instance inst = with_groups(complete(8), {Group{{0, 1}, 2}});
        CHECK_THROWS_AS(enumerate_minimal_steiner_trees(inst, 0, 20), ResourceError);
    }
}

TEST_CASE("minimality predicate") {
    Graph p(4);
    p.add_edge(0, 1);
    p.add_edge(1, 2);
    p.add_edge(2, 3);
    Group g{{0, 2}, 2};
    CHECK(is_minimal_steiner_tree(p, g, EdgeSet{0, 1}));
    CHECK_FALSE(is_minimal_steiner_tree(p, g, EdgeSet{0, 1, 2}));  // leaf 3 is not a terminal
    CHECK_FALSE(is_minimal_steiner_tree(p, g, EdgeSet{0}));        // misses terminal 2
}

TEST_CASE("sigma upper bound") {
    Graph t(5);
    for (Vertex v = 1; v < 5; ++v) t.add_edge(v - 1, v);
    Instance tree = with_groups(t, {Group{{0, 1}, 2}, Group{{1, 4}, 2}, Group{{2, 3}, 2}, Group{{0, 4}, 2}});
    CHECK(*sigma_upper_bound(tree).exact_sigma == 4);
    CHECK(sigma_upper_bound(tree).log_sigma == doctest::Approx(std::log(4.0)));

    Instance k3 = with_groups(complete(3), {Group{{0, 1, 2}, 2}});
    CHECK(*sigma_upper_bound(k3).exact_sigma == 3);

    Graph c5(5);
    for (Vertex v = 0; v < 5; ++v) c5.add_edge(v, (v + 1) % 5);
    Instance cyc = with_groups(c5, {Group{{0, 2}, 2}, Group{{1, 3}, 2}});
    CHECK(*sigma_upper_bound(cyc).exact_sigma == 10);
    CHECK(sigma_upper_bound(cyc).log_sigma == doctest::Approx(std::log(10.0)));
}

TEST_CASE("exact sigma on a tree equals g") {
    Instance inst = gen_random_tree(7, 3, {3, 3, 2});
    SigmaEstimate s = sigma_exact(inst);
    CHECK(*s.exact_sigma == 3);
    CHECK(s.log_sigma == doctest::Approx(std::log(3.0)));
}

TEST_CASE("property: enumeration matches brute force and respects g*tau") {
    for (std::uint64_t s = 0; s < 40; ++s) {
        std::size_t n = 3 + s % 5;
        std::size_t m = std::min<std::size_t>(n * (n - 1) / 2, n - 1 + s % 6);
        Instance inst = gen_random_connected(n, m, s, {2, 2 + s % 2, 2});
        BigInt total = 0;
        for (std::size_t gi = 0; gi < inst.groups.size(); ++gi) {
            auto trees = enumerate_minimal_steiner_trees(inst, gi);
            CHECK(trees.size() == oracle::count_minimal_steiner_trees(inst.graph, inst.groups[gi]));
            for (const SteinerTree& t : trees) CHECK(is_minimal_steiner_tree(inst.graph, inst.groups[gi], t.edges));
            total += trees.size();
        }
        CHECK(total == *sigma_exact(inst).exact_sigma);
        CHECK(total <= BigInt(inst.groups.size()) * count_spanning_trees_exact(inst.graph));
    }
}
