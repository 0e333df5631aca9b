#include "reqcut/sp_embed.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>

#include "reqcut/random.hpp"

namespace reqcut {

int CompositionTrace::depth() const {
    if (nodes.empty()) return 0;
    std::function<int(std::size_t)> height = [&](std::size_t i) {
        int best = 0;
        for (std::size_t c : nodes[i].children) best = std::max(best, 1 + height(c));
        return best;
    };
    return height(root);
}

bool CompositionTrace::has_same_kind_child() const {
    for (const TraceNode& n : nodes)
        for (std::size_t c : n.children)
            if (n.kind != TraceKind::leaf && nodes[c].kind == n.kind) return true;
    return false;
}

namespace {

// Appends `child` to a composition of kind `kind`, splicing in its children
// when it has the same kind. For series, `from` is the vertex where the
// child is entered so spliced children stay in path order.
void splice_child(const CompositionTrace& trace, std::vector<std::size_t>& out, std::size_t child, TraceKind kind,
                  Vertex from) {
    const TraceNode& c = trace.nodes[child];
    if (c.kind != kind) {
        out.push_back(child);
        return;
    }
    if (kind == TraceKind::series && c.a != from)
        out.insert(out.end(), c.children.rbegin(), c.children.rend());
    else
        out.insert(out.end(), c.children.begin(), c.children.end());
}

EdgeId min_leaf(const CompositionTrace& trace, std::size_t i, std::vector<EdgeId>& memo) {
    constexpr EdgeId unset = std::numeric_limits<EdgeId>::max();
    if (memo[i] != unset) return memo[i];
    const TraceNode& n = trace.nodes[i];
    EdgeId best = n.kind == TraceKind::leaf ? n.edge : unset;
    for (std::size_t c : n.children) best = std::min(best, min_leaf(trace, c, memo));
    return memo[i] = best;
}

}  // namespace

std::optional<CompositionTrace> recognize_sp(const Graph& graph, Vertex x, Vertex y) {
    const std::size_t n = graph.vertex_count();
    if (x == y || x >= n || y >= n || graph.edge_count() == 0) return std::nullopt;

    struct VirtualEdge {
        Vertex a;
        Vertex b;
        std::size_t node;
        bool alive;
    };
    CompositionTrace trace;
    std::vector<VirtualEdge> ves;
    std::vector<std::set<std::size_t>> adj(n);

    auto add = [&](Vertex a, Vertex b, std::size_t node) {
        adj[a].insert(ves.size());
        adj[b].insert(ves.size());
        ves.push_back({a, b, node, true});
    };
    auto kill = [&](std::size_t id) {
        ves[id].alive = false;
        adj[ves[id].a].erase(id);
        adj[ves[id].b].erase(id);
    };

    for (const Edge& e : graph.edges()) {
        trace.nodes.push_back(TraceNode{TraceKind::leaf, {}, e.u, e.v, e.id});
        add(e.u, e.v, trace.nodes.size() - 1);
    }
    for (Vertex v = 0; v < n; ++v)
        if (adj[v].empty()) return std::nullopt;

    for (bool changed = true; changed;) {
        changed = false;

        std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> buckets;
        for (std::size_t id = 0; id < ves.size(); ++id)
            if (ves[id].alive) buckets[std::minmax(ves[id].a, ves[id].b)].push_back(id);
        for (const auto& [key, ids] : buckets) {
            if (ids.size() < 2) continue;
            TraceNode p{TraceKind::parallel, {}, key.first, key.second, 0};
            for (std::size_t id : ids) {
                splice_child(trace, p.children, ves[id].node, TraceKind::parallel, key.first);
                kill(id);
            }
            trace.nodes.push_back(std::move(p));
            add(key.first, key.second, trace.nodes.size() - 1);
            changed = true;
        }

        for (Vertex v = 0; v < n; ++v) {
            if (v == x || v == y || adj[v].size() != 2) continue;
            std::size_t e1 = *adj[v].begin();
            std::size_t e2 = *std::next(adj[v].begin());
            Vertex a = ves[e1].a == v ? ves[e1].b : ves[e1].a;
            Vertex b = ves[e2].a == v ? ves[e2].b : ves[e2].a;
            if (a == b) continue;  // parallel pair, merged next round
            TraceNode s{TraceKind::series, {}, a, b, 0};
            splice_child(trace, s.children, ves[e1].node, TraceKind::series, a);
            splice_child(trace, s.children, ves[e2].node, TraceKind::series, v);
            kill(e1);
            kill(e2);
            trace.nodes.push_back(std::move(s));
            add(a, b, trace.nodes.size() - 1);
            changed = true;
        }
    }

    std::size_t alive = 0;
    std::size_t last = 0;
    for (std::size_t id = 0; id < ves.size(); ++id)
        if (ves[id].alive) {
            ++alive;
            last = id;
        }
    if (alive != 1 || std::minmax(ves[last].a, ves[last].b) != std::minmax(x, y)) return std::nullopt;

    trace.root = ves[last].node;
    TraceNode& root = trace.nodes[trace.root];
    if (root.a != x) {
        if (root.kind == TraceKind::series) std::reverse(root.children.begin(), root.children.end());
        std::swap(root.a, root.b);
    }

    // Parallel children in order of their smallest edge id.
    std::vector<EdgeId> memo(trace.nodes.size(), std::numeric_limits<EdgeId>::max());
    for (std::size_t i = 0; i < trace.nodes.size(); ++i) min_leaf(trace, i, memo);
    for (TraceNode& node : trace.nodes)
        if (node.kind == TraceKind::parallel)
            std::sort(node.children.begin(), node.children.end(),
                      [&](std::size_t p, std::size_t q) { return memo[p] < memo[q]; });

    // Drop nodes that were merged away so the array holds only the live tree.
    std::vector<std::size_t> remap(trace.nodes.size(), std::numeric_limits<std::size_t>::max());
    CompositionTrace compact;
    std::function<std::size_t(std::size_t)> copy = [&](std::size_t i) -> std::size_t {
        std::size_t slot = compact.nodes.size();
        compact.nodes.push_back(trace.nodes[i]);
        std::vector<std::size_t> kids;
        for (std::size_t c : trace.nodes[i].children) kids.push_back(copy(c));
        compact.nodes[slot].children = std::move(kids);
        return slot;
    };
    compact.root = copy(trace.root);
    return compact;
}

std::optional<SpTerminals> find_sp_terminals(const Graph& graph) {
    std::optional<SpTerminals> best;
    for (Vertex x = 0; x < graph.vertex_count(); ++x)
        for (Vertex y = x + 1; y < graph.vertex_count(); ++y) {
            auto trace = recognize_sp(graph, x, y);
            if (trace && (!best || trace->depth() < best->trace.depth())) best = SpTerminals{std::move(*trace), x, y};
        }
    return best;
}

namespace {

struct Ast {
    TraceKind kind = TraceKind::leaf;
    Rational cost;
    std::vector<Ast> children;
};

class SpParser {
public:
    explicit SpParser(std::string_view text) : text_(text) {}

    Ast parse() {
        Ast root = expression();
        skip();
        if (pos_ != text_.size()) throw SpParseError("unexpected trailing input", pos_);
        return root;
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            } else if (text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        skip();
        if (pos_ >= text_.size() || text_[pos_] != c) throw SpParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    Ast expression() {
        skip();
        if (text_.substr(pos_, 4) == "edge") {
            pos_ += 4;
            expect('(');
            skip();
            std::size_t start = pos_;
            while (pos_ < text_.size() && text_[pos_] != ')' && !std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            Ast leaf;
            try {
                leaf.cost = parse_rational(text_.substr(start, pos_ - start));
            } catch (const InputError& e) {
                throw SpParseError(std::string("bad edge cost: ") + e.what(), start);
            }
            if (leaf.cost < 0) throw SpParseError("negative edge cost", start);
            expect(')');
            return leaf;
        }
        if (pos_ < text_.size() && (text_[pos_] == 'S' || text_[pos_] == 'P')) {
            Ast node;
            node.kind = text_[pos_] == 'S' ? TraceKind::series : TraceKind::parallel;
            ++pos_;
            expect('(');
            node.children.push_back(expression());
            for (;;) {
                skip();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    node.children.push_back(expression());
                    continue;
                }
                break;
            }
            expect(')');
            return node;
        }
        throw SpParseError("expected 'edge', 'S' or 'P'", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

Ast normalize(Ast node) {
    if (node.kind == TraceKind::leaf) return node;
    std::vector<Ast> flat;
    for (Ast& child : node.children) {
        Ast c = normalize(std::move(child));
        if (c.kind == node.kind)
            for (Ast& g : c.children) flat.push_back(std::move(g));
        else
            flat.push_back(std::move(c));
    }
    if (flat.size() == 1) return std::move(flat.front());
    node.children = std::move(flat);
    return node;
}

struct Builder {
    std::size_t vertices = 2;
    std::vector<std::tuple<Vertex, Vertex, Rational>> edges;
    CompositionTrace trace;

    std::size_t build(const Ast& ast, Vertex a, Vertex b) {
        std::size_t slot = trace.nodes.size();
        trace.nodes.push_back(TraceNode{ast.kind, {}, a, b, 0});
        if (ast.kind == TraceKind::leaf) {
            trace.nodes[slot].edge = edges.size();
            edges.emplace_back(a, b, ast.cost);
            return slot;
        }
        std::vector<std::size_t> kids;
        if (ast.kind == TraceKind::parallel) {
            for (const Ast& c : ast.children) kids.push_back(build(c, a, b));
        } else {
            std::vector<Vertex> joints{a};
            for (std::size_t i = 1; i < ast.children.size(); ++i) joints.push_back(vertices++);
            joints.push_back(b);
            for (std::size_t i = 0; i < ast.children.size(); ++i)
                kids.push_back(build(ast.children[i], joints[i], joints[i + 1]));
        }
        trace.nodes[slot].children = std::move(kids);
        return slot;
    }
};

}  // namespace

SpInstance parse_sp_expression(std::string_view text) {
    Ast ast = normalize(SpParser(text).parse());
    Builder builder;
    builder.trace.root = builder.build(ast, 0, 1);
    SpInstance sp;
    sp.graph = Graph(builder.vertices);
    for (auto& [u, v, cost] : builder.edges) sp.graph.add_edge(u, v, cost);
    sp.trace = std::move(builder.trace);
    sp.source = 0;
    sp.sink = 1;
    return sp;
}

std::string format_sp_expression(const CompositionTrace& trace, const Graph& graph) {
    std::function<std::string(std::size_t)> emit = [&](std::size_t i) {
        const TraceNode& n = trace.nodes.at(i);
        if (n.kind == TraceKind::leaf) return "edge(" + format_rational(graph.edge(n.edge).cost) + ")";
        std::string out = n.kind == TraceKind::series ? "S(" : "P(";
        for (std::size_t k = 0; k < n.children.size(); ++k) {
            if (k) out += ",";
            out += emit(n.children[k]);
        }
        return out + ")";
    };
    return emit(trace.root);
}

std::vector<TraceEdge> recompose(const CompositionTrace& trace) {
    std::vector<TraceEdge> out;
    std::set<EdgeId> seen;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        const TraceNode& n = trace.nodes.at(i);
        switch (n.kind) {
            case TraceKind::leaf:
                if (!seen.insert(n.edge).second) throw InputError("trace repeats edge " + std::to_string(n.edge));
                out.push_back({n.edge, n.a, n.b});
                return;
            case TraceKind::series: {
                Vertex cur = n.a;
                for (std::size_t c : n.children) {
                    const TraceNode& child = trace.nodes.at(c);
                    if (child.a == cur)
                        cur = child.b;
                    else if (child.b == cur)
                        cur = child.a;
                    else
                        throw InputError("series children do not chain");
                    walk(c);
                }
                if (cur != n.b) throw InputError("series chain does not end at its terminal");
                return;
            }
            case TraceKind::parallel:
                for (std::size_t c : n.children) {
                    const TraceNode& child = trace.nodes.at(c);
                    if (std::minmax(child.a, child.b) != std::minmax(n.a, n.b))
                        throw InputError("parallel child has different terminals");
                    walk(c);
                }
                return;
        }
    };
    walk(trace.root);
    return out;
}

namespace {

struct Sampled {
    std::vector<EdgeId> tree;
    std::vector<EdgeId> path;  // terminal-to-terminal path inside `tree`
};

Sampled sample_node(const CompositionTrace& trace, std::size_t i, std::uint64_t seed) {
    const TraceNode& n = trace.nodes[i];
    if (n.kind == TraceKind::leaf) return {{n.edge}, {n.edge}};
    std::vector<Sampled> parts;
    for (std::size_t c : n.children) parts.push_back(sample_node(trace, c, seed));
    Sampled out;
    if (n.kind == TraceKind::series) {
        for (Sampled& p : parts) {
            out.tree.insert(out.tree.end(), p.tree.begin(), p.tree.end());
            out.path.insert(out.path.end(), p.path.begin(), p.path.end());
        }
        return out;
    }
    std::size_t keep = 0;
    for (std::size_t j = 1; j < parts.size(); ++j)
        if (parts[j].path.size() < parts[keep].path.size()) keep = j;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        std::vector<EdgeId>& tree = parts[j].tree;
        if (j != keep) {
            const std::vector<EdgeId>& path = parts[j].path;
            EdgeId dropped = path[uniform_index(mix_key(seed, i, j), path.size())];
            tree.erase(std::find(tree.begin(), tree.end(), dropped));
        }
        out.tree.insert(out.tree.end(), tree.begin(), tree.end());
    }
    out.path = std::move(parts[keep].path);
    return out;
}

void require_unit(const Graph& graph, const char* op) {
    for (const Edge& e : graph.edges())
        if (e.cost != 1)
            throw ContractError(std::string(op) + ": edge " + std::to_string(e.id) +
                                " has non-unit length; subdivide first");
}

}  // namespace

EdgeSet sample_spanning_tree(const CompositionTrace& trace, const Graph& graph, std::uint64_t seed) {
    Sampled s = sample_node(trace, trace.root, seed);
    EdgeSet tree = normalize_edge_set(std::move(s.tree));
    if (graph.vertex_count() > 0 && tree.size() != graph.vertex_count() - 1)
        throw InputError("trace does not describe this graph");
    return tree;
}

EdgeSet construct_tree(const SpInstance& sp, std::uint64_t seed) {
    require_unit(sp.graph, "construct_tree");
    return sample_spanning_tree(sp.trace, sp.graph, seed);
}

SubdividedSp subdivide_unit(const SpInstance& sp) {
    SubdividedSp out;
    std::function<std::string(std::size_t)> emit = [&](std::size_t i) {
        const TraceNode& n = sp.trace.nodes.at(i);
        if (n.kind == TraceKind::leaf) {
            const Rational& cost = sp.graph.edge(n.edge).cost;
            if (denominator(cost) != 1 || cost < 1)
                throw ContractError("subdivide_unit: edge " + std::to_string(n.edge) +
                                    " length is not a positive integer");
            long long k = numerator(cost).convert_to<long long>();
            std::string text = k == 1 ? "edge(1)" : "S(";
            for (long long j = 0; j < k; ++j) {
                out.origin.push_back(n.edge);
                if (k > 1) text += j ? ",edge(1)" : "edge(1)";
            }
            return k == 1 ? text : text + ")";
        }
        std::string text = n.kind == TraceKind::series ? "S(" : "P(";
        for (std::size_t c = 0; c < n.children.size(); ++c) text += (c ? "," : "") + emit(n.children[c]);
        return text + ")";
    };
    out.sp = parse_sp_expression(emit(sp.trace.root));
    return out;
}

namespace {

struct RootedTree {
    std::vector<std::size_t> parent;
    std::vector<EdgeId> parent_edge;
    std::vector<int> depth;
};

RootedTree root_tree(const Graph& graph, std::span<const EdgeId> tree) {
    const std::size_t n = graph.vertex_count();
    std::vector<std::vector<EdgeId>> adj(n);
    for (EdgeId id : tree) {
        adj[graph.edge(id).u].push_back(id);
        adj[graph.edge(id).v].push_back(id);
    }
    RootedTree rt{std::vector<std::size_t>(n, n), std::vector<EdgeId>(n, 0), std::vector<int>(n, -1)};
    if (n == 0) return rt;
    std::deque<Vertex> queue{0};
    rt.depth[0] = 0;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (EdgeId id : adj[v]) {
            Vertex w = graph.edge(id).other(v);
            if (rt.depth[w] >= 0) continue;
            rt.depth[w] = rt.depth[v] + 1;
            rt.parent[w] = v;
            rt.parent_edge[w] = id;
            queue.push_back(w);
        }
    }
    return rt;
}

// Calls on_edge for every tree edge on the u-v path; returns its length.
template <typename F>
int walk_tree_path(const RootedTree& rt, Vertex u, Vertex v, F&& on_edge) {
    int length = 0;
    while (u != v) {
        if (rt.depth[u] < rt.depth[v]) std::swap(u, v);
        on_edge(rt.parent_edge[u]);
        u = rt.parent[u];
        ++length;
    }
    return length;
}

std::vector<int> bfs_hops(const Graph& graph, const std::vector<std::vector<EdgeId>>& inc, Vertex source) {
    std::vector<int> dist(graph.vertex_count(), -1);
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        for (EdgeId id : inc[v]) {
            Vertex w = graph.edge(id).other(v);
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

std::vector<std::vector<int>> tree_distances(const Graph& graph, std::span<const EdgeId> tree) {
    Graph forest(graph.vertex_count());
    for (EdgeId id : tree) forest.add_edge(graph.edge(id).u, graph.edge(id).v);
    auto inc = forest.incidence();
    std::vector<std::vector<int>> dist;
    for (Vertex v = 0; v < graph.vertex_count(); ++v) dist.push_back(bfs_hops(forest, inc, v));
    return dist;
}

std::vector<EdgeStretch> estimate_distortion(const SpInstance& sp, std::size_t samples, std::uint64_t seed) {
    if (samples < 100) throw ConfigError("estimate_distortion: samples must be >= 100");
    require_unit(sp.graph, "estimate_distortion");
    const Graph& g = sp.graph;
    auto inc = g.incidence();
    std::vector<double> graph_dist;
    for (const Edge& e : g.edges()) graph_dist.push_back(static_cast<double>(bfs_hops(g, inc, e.u)[e.v]));

    std::vector<double> sum(g.edge_count(), 0.0);
    std::vector<double> sum_sq(g.edge_count(), 0.0);
    for (std::size_t s = 0; s < samples; ++s) {
        EdgeSet tree = construct_tree(sp, derive_seed(seed, s));
        RootedTree rt = root_tree(g, tree);
        for (const Edge& e : g.edges()) {
            double stretch = walk_tree_path(rt, e.u, e.v, [](EdgeId) {}) / graph_dist[e.id];
            sum[e.id] += stretch;
            sum_sq[e.id] += stretch * stretch;
        }
    }
    const double count = static_cast<double>(samples);
    std::vector<EdgeStretch> out;
    for (const Edge& e : g.edges()) {
        double mean = sum[e.id] / count;
        double var = std::max(0.0, (sum_sq[e.id] - count * mean * mean) / (count - 1.0));
        out.push_back({e.id, e.u, e.v, mean, std::sqrt(var / count)});
    }
    return out;
}

SpPipelineResult solve_sp_pipeline(const Instance& instance, const CompositionTrace& trace,
                                   const RoundingConfig& config, std::size_t embed_trials) {
    require_valid(instance);
    if (embed_trials == 0) throw ConfigError("solve_sp_pipeline: embed_trials must be >= 1");
    recompose(trace);
    const Graph& g = instance.graph;

    RoundingConfig tree_config = config;
    tree_config.sigma_source = SigmaSource::upper_bound;  // tau(tree) = 1, so sigma = g

    SpPipelineResult result;
    result.depth = trace.depth();
    result.sigma_hat = static_cast<double>(instance.groups.size());
    std::optional<CutSolution> best;
    for (std::size_t t = 0; t < embed_trials; ++t) {
        EmbeddingReport report;
        report.index = t;
        report.seed = derive_seed(config.master_seed ^ 0x5bd1e995ull, t);
        report.tree = sample_spanning_tree(trace, g, report.seed);

        // Price each tree edge by the graph edges whose tree path uses it.
        RootedTree rt = root_tree(g, report.tree);
        std::vector<Rational> load(g.edge_count());
        for (const Edge& e : g.edges()) walk_tree_path(rt, e.u, e.v, [&](EdgeId f) { load[f] += e.cost; });

        Instance tree_instance;
        tree_instance.graph = Graph(g.vertex_count());
        for (EdgeId f : report.tree) tree_instance.graph.add_edge(g.edge(f).u, g.edge(f).v, load[f]);
        tree_instance.groups = instance.groups;

        RequirementCutResult tree_result = solve_requirement_cut(tree_instance, tree_config);
        result.alpha = tree_result.alpha;
        report.tree_lp_opt = tree_result.lp.objective;
        report.tree_cost = tree_result.solution.cost_d;

        auto labels = component_labels(tree_instance.graph, tree_result.solution.cut);
        std::vector<EdgeId> graph_cut;
        for (const Edge& e : g.edges())
            if (labels[e.u] != labels[e.v]) graph_cut.push_back(e.id);
        CutSolution sol = evaluate_cut(instance, graph_cut);
        report.feasible_before_repair = sol.feasible;
        if (!sol.feasible) {
            sol = repair_cut(instance, tree_result.scaled, sol.cut);
            report.repaired = true;
        }
        report.graph_cost = sol.cost_d;
        if (!best || sol.cost < best->cost) {
            best = sol;
            result.chosen_embedding = t;
        }
        result.embeddings.push_back(std::move(report));
    }
    result.solution = std::move(*best);
    return result;
}

}  // namespace reqcut
