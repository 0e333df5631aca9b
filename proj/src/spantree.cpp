#include "reqcut/spantree.hpp"

#include <cmath>
#include <utility>

#include "reqcut/errors.hpp"

namespace reqcut {

namespace {

void require_connected(const Graph& graph, const char* op) {
    if (graph.vertex_count() == 0) throw StructuralError(std::string(op) + ": empty graph");
    if (!is_connected(graph)) throw StructuralError(std::string(op) + ": graph is disconnected");
}

}  // namespace

LaplacianMinor laplacian_minor(const Graph& graph) {
    const std::size_t n = graph.vertex_count();
    std::vector<long long> full(n * n, 0);
    for (const Edge& e : graph.edges()) {
        full[e.u * n + e.u] += 1;
        full[e.v * n + e.v] += 1;
        full[e.u * n + e.v] -= 1;
        full[e.v * n + e.u] -= 1;
    }
    for (std::size_t r = 0; r < n; ++r) {
        long long sum = 0;
        for (std::size_t c = 0; c < n; ++c) sum += full[r * n + c];
        if (sum != 0) throw std::logic_error("Laplacian row sum is nonzero");
    }
    LaplacianMinor minor;
    minor.size = n == 0 ? 0 : n - 1;
    minor.entries.resize(minor.size * minor.size);
    for (std::size_t r = 1; r < n; ++r)
        for (std::size_t c = 1; c < n; ++c) minor.entries[(r - 1) * minor.size + (c - 1)] = full[r * n + c];
    return minor;
}

BigInt count_spanning_trees_exact(const Graph& graph) {
    require_connected(graph, "count_spanning_trees_exact");
    LaplacianMinor minor = laplacian_minor(graph);
    const std::size_t k = minor.size;
    if (k == 0) return 1;

    std::vector<BigInt> a(minor.entries.begin(), minor.entries.end());
    auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return a[r * k + c]; };

    // Bareiss: every intermediate division is exact.
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t p = 0; p < k; ++p) {
        if (at(p, p) == 0) {
            std::size_t swap_row = p + 1;
            while (swap_row < k && at(swap_row, p) == 0) ++swap_row;
            if (swap_row == k) return 0;
            for (std::size_t c = 0; c < k; ++c) std::swap(at(p, c), at(swap_row, c));
            sign = -sign;
        }
        for (std::size_t r = p + 1; r < k; ++r) {
            for (std::size_t c = p + 1; c < k; ++c) at(r, c) = (at(r, c) * at(p, p) - at(r, p) * at(p, c)) / prev;
            at(r, p) = 0;
        }
        prev = at(p, p);
    }
    BigInt det = at(k - 1, k - 1);
    return sign < 0 ? BigInt(-det) : det;
}

double log_spanning_trees(const Graph& graph) {
    require_connected(graph, "log_spanning_trees");
    LaplacianMinor minor = laplacian_minor(graph);
    const std::size_t k = minor.size;
    std::vector<double> a(minor.entries.begin(), minor.entries.end());
    auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * k + c]; };

    double log_det = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
        std::size_t pivot = p;
        for (std::size_t r = p + 1; r < k; ++r)
            if (std::abs(at(r, p)) > std::abs(at(pivot, p))) pivot = r;
        if (at(pivot, p) == 0.0) throw StructuralError("log_spanning_trees: singular Laplacian minor");
        if (pivot != p)
            for (std::size_t c = 0; c < k; ++c) std::swap(at(p, c), at(pivot, c));
        log_det += std::log(std::abs(at(p, p)));
        for (std::size_t r = p + 1; r < k; ++r) {
            double factor = at(r, p) / at(p, p);
            if (factor == 0.0) continue;
            for (std::size_t c = p; c < k; ++c) at(r, c) -= factor * at(p, c);
        }
    }
    return log_det;
}

long long feedback_edge_number(const Graph& graph) {
    require_connected(graph, "feedback_edge_number");
    return static_cast<long long>(graph.edge_count()) - static_cast<long long>(graph.vertex_count()) + 1;
}

}  // namespace reqcut
