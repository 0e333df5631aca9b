#include "reqcut/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "reqcut/errors.hpp"

namespace reqcut {

namespace {

BigInt parse_digits(std::string_view digits) {
    BigInt value = 0;
    for (char c : digits) {
        value *= 10;
        value += c - '0';
    }
    return value;
}

BigInt pow10(long exponent) {
    BigInt p = 1;
    for (long i = 0; i < exponent; ++i) p *= 10;
    return p;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rational parse_decimal(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 4)
            throw InputError("malformed number exponent: '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_text));
        if (exp_negative) exponent = -exponent;
        text = text.substr(0, e);
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
        throw InputError("malformed number: '" + std::string(text) + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
    Rational value(parse_digits(digits));
    if (exponent >= 0)
        value *= Rational(pow10(exponent));
    else
        value /= Rational(pow10(-exponent));
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational num = parse_decimal(text.substr(0, slash));
        Rational den = parse_decimal(text.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    return parse_decimal(text);
}

std::string format_rational(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

EdgeId Graph::add_edge(Vertex u, Vertex v, Rational cost) {
    if (u >= vertex_count_ || v >= vertex_count_)
        throw InputError("edge endpoint out of range: (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    if (cost < 0) throw InputError("negative edge cost " + format_rational(cost));
    EdgeId id = edges_.size();
    double cost_d = to_double(cost);
    edges_.push_back(Edge{id, u, v, std::move(cost), cost_d});
    return id;
}

std::vector<std::vector<EdgeId>> Graph::incidence() const {
    std::vector<std::vector<EdgeId>> inc(vertex_count_);
    for (const Edge& e : edges_) {
        inc[e.u].push_back(e.id);
        inc[e.v].push_back(e.id);
    }
    return inc;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
}

bool is_connected(const Graph& graph) {
    if (graph.vertex_count() <= 1) return true;
    UnionFind uf(graph.vertex_count());
    for (const Edge& e : graph.edges()) uf.unite(e.u, e.v);
    return uf.set_count() == 1;
}

std::vector<std::size_t> component_labels(const Graph& graph, std::span<const EdgeId> cut) {
    std::vector<char> removed(graph.edge_count(), 0);
    for (EdgeId id : cut) {
        if (id >= graph.edge_count()) throw InputError("unknown edge id " + std::to_string(id) + " in cut");
        removed[id] = 1;
    }
    UnionFind uf(graph.vertex_count());
    for (const Edge& e : graph.edges())
        if (!removed[e.id]) uf.unite(e.u, e.v);

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> root_label(graph.vertex_count(), unset);
    std::vector<std::size_t> labels(graph.vertex_count());
    std::size_t next = 0;
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
        std::size_t r = uf.find(v);
        if (root_label[r] == unset) root_label[r] = next++;
        labels[v] = root_label[r];
    }
    return labels;
}

std::vector<int> components_per_group(const Instance& instance, std::span<const EdgeId> cut) {
    auto labels = component_labels(instance.graph, cut);
    std::vector<int> counts;
    counts.reserve(instance.groups.size());
    for (const Group& group : instance.groups) {
        std::vector<std::size_t> seen;
        for (Vertex v : group.members) seen.push_back(labels.at(v));
        std::sort(seen.begin(), seen.end());
        counts.push_back(static_cast<int>(std::unique(seen.begin(), seen.end()) - seen.begin()));
    }
    return counts;
}

CutSolution evaluate_cut(const Instance& instance, std::span<const EdgeId> cut) {
    CutSolution sol;
    sol.cut = normalize_edge_set({cut.begin(), cut.end()});
    sol.components_per_group = components_per_group(instance, sol.cut);
    for (EdgeId id : sol.cut) sol.cost += instance.graph.edge(id).cost;
    sol.cost_d = to_double(sol.cost);
    sol.feasible = true;
    for (std::size_t i = 0; i < instance.groups.size(); ++i)
        if (sol.components_per_group[i] < instance.groups[i].requirement) sol.feasible = false;
    return sol;
}

SpanningTree minimum_spanning_tree(const Graph& graph, std::span<const double> weights) {
    if (weights.size() != graph.edge_count()) throw InputError("weight vector size does not match edge count");
    std::vector<EdgeId> order(graph.edge_count());
    std::iota(order.begin(), order.end(), EdgeId{0});
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) { return weights[a] < weights[b]; });

    UnionFind uf(graph.vertex_count());
    SpanningTree tree;
    for (EdgeId id : order) {
        const Edge& e = graph.edge(id);
        if (uf.unite(e.u, e.v)) {
            tree.edges.push_back(id);
            tree.weight += weights[id];
        }
    }
    if (graph.vertex_count() > 0 && uf.set_count() != 1)
        throw StructuralError("graph is disconnected; no spanning tree exists");
    std::sort(tree.edges.begin(), tree.edges.end());
    return tree;
}

std::vector<std::string> validate(const Instance& instance) {
    std::vector<std::string> violations;
    const Graph& g = instance.graph;
    if (instance.groups.empty()) violations.push_back("instance has no terminal groups");
    for (std::size_t i = 0; i < instance.groups.size(); ++i) {
        const Group& group = instance.groups[i];
        const std::string tag = "group " + std::to_string(i) + ": ";
        bool in_range = true;
        for (Vertex v : group.members)
            if (v >= g.vertex_count()) in_range = false;
        if (!in_range) violations.push_back(tag + "member vertex out of range");
        std::vector<Vertex> sorted = group.members;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            violations.push_back(tag + "duplicate member vertex");
        if (group.members.size() < 2) violations.push_back(tag + "fewer than 2 terminals");
        if (group.requirement < 2) violations.push_back(tag + "requirement below 2");
        if (group.requirement > static_cast<int>(group.members.size()))
            violations.push_back(tag + "requirement exceeds group size");
    }
    if (!is_connected(g)) violations.push_back("graph is disconnected");
    return violations;
}

void require_valid(const Instance& instance) {
    auto violations = validate(instance);
    if (violations.empty()) return;
    std::string msg = "invalid instance:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw InputError(msg);
}

EdgeSet normalize_edge_set(std::vector<EdgeId> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

namespace {

std::string strip_comments(std::string_view text) {
    std::string out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        out += line;
        out += '\n';
    }
    return out;
}

template <typename T>
T read_integer(std::istringstream& in, const char* what) {
    std::string token;
    if (!(in >> token)) throw InputError(std::string("unexpected end of input reading ") + what);
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw InputError(std::string("expected integer for ") + what + ", got '" + token + "'");
    return value;
}

Rational json_cost(const nlohmann::json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number()) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, j.get<double>());
        return parse_rational(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
    }
    throw InputError("edge cost must be a number or a rational string");
}

Instance parse_instance_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed JSON instance: ") + e.what());
    }
    try {
        Instance inst;
        inst.graph = Graph(doc.at("n").get<std::size_t>());
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 3) throw InputError("edge must be [u, v, cost]");
            inst.graph.add_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>(), json_cost(e[2]));
        }
        for (const auto& grp : doc.at("groups")) {
            Group group;
            group.requirement = grp.at("r").get<int>();
            group.members = grp.at("members").get<std::vector<Vertex>>();
            std::sort(group.members.begin(), group.members.end());
            inst.groups.push_back(std::move(group));
        }
        return inst;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON instance: ") + e.what());
    }
}

}  // namespace

Instance parse_instance(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') return parse_instance_json(text);

    std::istringstream in(strip_comments(text));
    Instance inst;
    auto n = read_integer<std::size_t>(in, "n");
    auto m = read_integer<std::size_t>(in, "m");
    auto g = read_integer<std::size_t>(in, "g");
    inst.graph = Graph(n);
    for (std::size_t i = 0; i < m; ++i) {
        auto u = read_integer<std::size_t>(in, "edge endpoint");
        auto v = read_integer<std::size_t>(in, "edge endpoint");
        std::string cost;
        if (!(in >> cost)) throw InputError("unexpected end of input reading edge cost");
        inst.graph.add_edge(u, v, parse_rational(cost));
    }
    for (std::size_t i = 0; i < g; ++i) {
        Group group;
        group.requirement = read_integer<int>(in, "requirement");
        auto k = read_integer<std::size_t>(in, "group size");
        for (std::size_t j = 0; j < k; ++j) group.members.push_back(read_integer<Vertex>(in, "group member"));
        std::sort(group.members.begin(), group.members.end());
        inst.groups.push_back(std::move(group));
    }
    std::string trailing;
    if (in >> trailing) throw InputError("trailing content after instance: '" + trailing + "'");
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw InputError("cannot open instance file '" + path + "'");
    std::stringstream buf;
    buf << file.rdbuf();
    return parse_instance(buf.str());
}

std::string format_instance(const Instance& instance) {
    std::ostringstream out;
    const Graph& g = instance.graph;
    out << g.vertex_count() << ' ' << g.edge_count() << ' ' << instance.groups.size() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_rational(e.cost) << '\n';
    for (const Group& group : instance.groups) {
        out << group.requirement << ' ' << group.members.size();
        for (Vertex v : group.members) out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

std::string format_instance_json(const Instance& instance) {
    nlohmann::json doc;
    doc["n"] = instance.graph.vertex_count();
    doc["edges"] = nlohmann::json::array();
    for (const Edge& e : instance.graph.edges()) {
        nlohmann::json cost = denominator(e.cost) == 1 ? nlohmann::json(numerator(e.cost).convert_to<long long>())
                                                       : nlohmann::json(format_rational(e.cost));
        doc["edges"].push_back({e.u, e.v, cost});
    }
    doc["groups"] = nlohmann::json::array();
    for (const Group& group : instance.groups) doc["groups"].push_back({{"r", group.requirement}, {"members", group.members}});
    return doc.dump();
}

}  // namespace reqcut
