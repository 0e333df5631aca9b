#include "reqcut/instance_gen.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "reqcut/errors.hpp"
#include "reqcut/random.hpp"

namespace reqcut {

namespace {

std::vector<Vertex> sample_subset(std::size_t n, std::size_t k, SeqRng& rng) {
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), Vertex{0});
    for (std::size_t i = 0; i < k; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<Group> sample_groups(std::size_t n, const GroupSpec& spec, SeqRng& rng) {
    if (n < 2) throw InputError("generator: need at least 2 vertices for a group");
    if (spec.count == 0) throw InputError("generator: group count must be >= 1");
    const std::size_t size = std::clamp<std::size_t>(spec.size, 2, n);
    std::vector<Group> groups;
    for (std::size_t i = 0; i < spec.count; ++i) {
        Group g;
        g.members = sample_subset(n, size, rng);
        g.requirement = spec.requirement > 0 ? std::min<int>(spec.requirement, static_cast<int>(size))
                                             : static_cast<int>(rng.between(2, static_cast<long long>(size)));
        groups.push_back(std::move(g));
    }
    return groups;
}

Rational random_cost(SeqRng& rng, int max_cost) {
    return max_cost <= 1 ? Rational(1) : Rational(rng.between(1, max_cost));
}

// Random tree by attaching each vertex of a shuffled order to an earlier one.
Graph random_tree_graph(std::size_t n, SeqRng& rng, int max_cost) {
    if (n == 0) throw InputError("generator: n must be >= 1");
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    Graph g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(order[rng.below(i)], order[i], random_cost(rng, max_cost));
    return g;
}

void add_chords(Graph& g, std::size_t k, SeqRng& rng, int max_cost) {
    const std::size_t n = g.vertex_count();
    std::set<std::pair<Vertex, Vertex>> present;
    for (const Edge& e : g.edges()) present.insert(std::minmax(e.u, e.v));
    if (present.size() + k > n * (n - 1) / 2)
        throw InputError("generator: " + std::to_string(k) + " chords do not fit on " + std::to_string(n) +
                         " vertices without parallel edges");
    while (k > 0) {
        Vertex u = rng.below(n);
        Vertex v = rng.below(n);
        if (u == v || !present.insert(std::minmax(u, v)).second) continue;
        g.add_edge(u, v, random_cost(rng, max_cost));
        --k;
    }
}

}  // namespace

Instance gen_setcover_star(std::size_t num_sets, const std::vector<std::vector<std::size_t>>& memberships) {
    if (num_sets == 0) throw InputError("setcover_star: need at least one set");
    if (memberships.empty()) throw InputError("setcover_star: universe is empty");
    Instance inst;
    inst.graph = Graph(num_sets + 1);
    for (std::size_t s = 0; s < num_sets; ++s) inst.graph.add_edge(0, s + 1);
    for (std::size_t e = 0; e < memberships.size(); ++e) {
        std::set<Vertex> members{0};
        for (std::size_t s : memberships[e]) {
            if (s >= num_sets) throw InputError("setcover_star: element " + std::to_string(e) + " names unknown set");
            members.insert(s + 1);
        }
        if (members.size() < 2) throw InputError("setcover_star: element " + std::to_string(e) + " is uncovered");
        inst.groups.push_back(Group{{members.begin(), members.end()}, 2});
    }
    return inst;
}

Instance gen_short_cycles(std::size_t num_cycles, std::size_t cycle_len, const GroupSpec& groups,
                          std::uint64_t seed) {
    if (cycle_len < 3) throw InputError("short_cycles: cycle_len must be >= 3");
    if (num_cycles == 0) throw InputError("short_cycles: need at least one cycle");
    Instance inst;
    inst.graph = Graph(num_cycles * (cycle_len - 1) + 1);
    Vertex start = 0;
    Vertex next = 1;
    for (std::size_t c = 0; c < num_cycles; ++c) {
        std::vector<Vertex> ring{start};
        for (std::size_t i = 1; i < cycle_len; ++i) ring.push_back(next++);
        for (std::size_t i = 0; i < cycle_len; ++i) inst.graph.add_edge(ring[i], ring[(i + 1) % cycle_len]);
        start = ring[cycle_len / 2];  // the opposite vertex joins the next cycle
    }
    SeqRng rng(seed);
    inst.groups = sample_groups(inst.graph.vertex_count(), groups, rng);
    return inst;
}

Instance gen_bounded_fes(std::size_t n, std::size_t k, std::uint64_t seed, const GroupSpec& groups) {
    if (k > n) throw InputError("bounded_fes: k must be <= n");
    SeqRng rng(seed);
    Instance inst;
    inst.graph = random_tree_graph(n, rng, 1);
    add_chords(inst.graph, k, rng, 1);
    inst.groups = sample_groups(n, groups, rng);
    return inst;
}

Instance gen_random_tree(std::size_t n, std::uint64_t seed, const GroupSpec& groups, int max_cost) {
    SeqRng rng(seed);
    Instance inst;
    inst.graph = random_tree_graph(n, rng, max_cost);
    inst.groups = sample_groups(n, groups, rng);
    return inst;
}

Instance gen_random_connected(std::size_t n, std::size_t m, std::uint64_t seed, const GroupSpec& groups,
                              int max_cost) {
    if (n == 0 || m + 1 < n) throw InputError("random_connected: need m >= n - 1");
    SeqRng rng(seed);
    Instance inst;
    inst.graph = random_tree_graph(n, rng, max_cost);
    add_chords(inst.graph, m - (n - 1), rng, max_cost);
    inst.groups = sample_groups(n, groups, rng);
    return inst;
}

namespace {

std::string sp_block(int height, std::size_t fanout, std::size_t path_len, SeqRng& rng) {
    if (height == 0) return "edge(1)";
    const bool series = height % 2 == 1;
    const std::size_t width = series ? path_len : fanout;
    std::string out = series ? "S(" : "P(";
    for (std::size_t i = 0; i < width; ++i) {
        // Parallel siblings are never bare edges, so every branch is a real path.
        int h = i == 0 ? height - 1 : static_cast<int>(rng.between(series ? 0 : 1, height - 1));
        if (i) out += ",";
        out += sp_block(h, fanout, path_len, rng);
    }
    return out + ")";
}

}  // namespace

SpGenerated gen_sp_depth(int m, std::size_t fanout, std::size_t path_len, std::uint64_t seed,
                         std::size_t group_count) {
    if (m < 0) throw InputError("sp_depth: m must be >= 0");
    if (fanout < 2 || path_len < 2) throw InputError("sp_depth: fanout and path_len must be >= 2");
    if (group_count == 0) throw InputError("sp_depth: group count must be >= 1");
    SeqRng rng(seed);
    SpGenerated out;
    out.expression = sp_block(m, fanout, path_len, rng);
    out.sp = parse_sp_expression(out.expression);
    if (out.sp.trace.depth() != m) throw std::logic_error("sp_depth: generated trace has the wrong depth");

    std::vector<std::pair<Vertex, Vertex>> blocks;
    for (const TraceNode& node : out.sp.trace.nodes)
        if (node.kind != TraceKind::leaf) blocks.emplace_back(node.a, node.b);
    if (blocks.empty()) blocks.emplace_back(out.sp.source, out.sp.sink);

    out.instance.graph = out.sp.graph;
    for (std::size_t i = 0; i < group_count; ++i) {
        std::set<Vertex> members;
        for (int pick = 0; pick < 2; ++pick) {
            auto [a, b] = blocks[rng.below(blocks.size())];
            members.insert(a);
            members.insert(b);
        }
        out.instance.groups.push_back(Group{{members.begin(), members.end()}, 2});
    }
    return out;
}

std::vector<Instance> oracle_suite(std::size_t count, std::uint64_t seed) {
    std::vector<Instance> suite;
    for (std::size_t i = 0; i < count; ++i) {
        SeqRng rng(derive_seed(seed, i));
        const std::size_t n = static_cast<std::size_t>(rng.between(3, 7));
        const std::size_t max_m = std::min<std::size_t>(16, n * (n - 1) / 2);
        const std::size_t m = static_cast<std::size_t>(rng.between(static_cast<long long>(n - 1),
                                                                   static_cast<long long>(max_m)));
        GroupSpec groups;
        groups.count = static_cast<std::size_t>(rng.between(1, 3));
        groups.size = static_cast<std::size_t>(rng.between(2, static_cast<long long>(std::min<std::size_t>(4, n))));
        groups.requirement = 0;
        suite.push_back(gen_random_connected(n, m, rng.next(), groups, 5));
    }
    return suite;
}

GenFamily parse_family(std::string_view name) {
    if (name == "setcover_star") return GenFamily::setcover_star;
    if (name == "short_cycles") return GenFamily::short_cycles;
    if (name == "bounded_fes") return GenFamily::bounded_fes;
    if (name == "sp_depth") return GenFamily::sp_depth;
    if (name == "random_tree") return GenFamily::random_tree;
    if (name == "random_connected") return GenFamily::random_connected;
    throw InputError("unknown generator family '" + std::string(name) + "'");
}

std::string family_name(GenFamily family) {
    switch (family) {
        case GenFamily::setcover_star: return "setcover_star";
        case GenFamily::short_cycles: return "short_cycles";
        case GenFamily::bounded_fes: return "bounded_fes";
        case GenFamily::sp_depth: return "sp_depth";
        case GenFamily::random_tree: return "random_tree";
        case GenFamily::random_connected: return "random_connected";
    }
    return "?";
}

GenSpec parse_gen_spec(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("generator spec: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("family")) throw InputError("generator spec: expected object with 'family'");
    GenSpec spec;
    try {
        for (auto& [key, value] : doc.items()) {
            if (key == "family") spec.family = parse_family(value.get<std::string>());
            else if (key == "seed") spec.seed = value.get<std::uint64_t>();
            else if (key == "n") spec.n = value.get<std::size_t>();
            else if (key == "m") spec.m = value.get<std::size_t>();
            else if (key == "k") spec.k = value.get<std::size_t>();
            else if (key == "num_sets") spec.num_sets = value.get<std::size_t>();
            else if (key == "memberships") spec.memberships = value.get<std::vector<std::vector<std::size_t>>>();
            else if (key == "num_cycles") spec.num_cycles = value.get<std::size_t>();
            else if (key == "cycle_len") spec.cycle_len = value.get<std::size_t>();
            else if (key == "depth") spec.depth = value.get<int>();
            else if (key == "fanout") spec.fanout = value.get<std::size_t>();
            else if (key == "path_len") spec.path_len = value.get<std::size_t>();
            else if (key == "max_cost") spec.max_cost = value.get<int>();
            else if (key == "groups") spec.groups.count = value.get<std::size_t>();
            else if (key == "group_size") spec.groups.size = value.get<std::size_t>();
            else if (key == "requirement") spec.groups.requirement = value.get<int>();
            else throw InputError("generator spec: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("generator spec: ") + e.what());
    }
    return spec;
}

Generated generate(const GenSpec& spec) {
    Generated out;
    switch (spec.family) {
        case GenFamily::setcover_star:
            out.instance = gen_setcover_star(spec.num_sets, spec.memberships);
            break;
        case GenFamily::short_cycles:
            out.instance = gen_short_cycles(spec.num_cycles, spec.cycle_len, spec.groups, spec.seed);
            break;
        case GenFamily::bounded_fes:
            out.instance = gen_bounded_fes(spec.n, spec.k, spec.seed, spec.groups);
            break;
        case GenFamily::sp_depth:
            out.sp = gen_sp_depth(spec.depth, spec.fanout, spec.path_len, spec.seed, spec.groups.count);
            out.instance = out.sp->instance;
            break;
        case GenFamily::random_tree:
            out.instance = gen_random_tree(spec.n, spec.seed, spec.groups, spec.max_cost);
            break;
        case GenFamily::random_connected:
            out.instance = gen_random_connected(spec.n, spec.m, spec.seed, spec.groups, spec.max_cost);
            break;
    }
    return out;
}

}  // namespace reqcut
