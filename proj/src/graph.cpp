#include "sgsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgsp/error.hpp"

namespace sgsp {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
    for (auto& [a, b] : edges) {
        if (a == b) {
            throw Error(ErrorKind::invalid_argument, "self-loop at vertex " + std::to_string(a));
        }
        if (a >= n || b >= n) {
            throw Error(ErrorKind::invalid_argument,
                        "edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") out of range for " + std::to_string(n) + " vertices");
        }
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    std::vector<CsrMatrix::Entry> entries;
    entries.reserve(2 * edges_.size());
    for (auto [a, b] : edges_) {
        entries.push_back({a, b, 1.0});
        entries.push_back({b, a, 1.0});
    }
    adjacency_ = CsrMatrix::from_triplets(n, std::move(entries));
}

Graph Graph::complete(std::size_t n) {
    std::vector<Edge> e;
    e.reserve(n * (n > 0 ? n - 1 : 0) / 2);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

Graph Graph::path(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

Graph Graph::star(std::size_t leaves) {
    std::vector<Edge> e;
    for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return Graph(leaves + 1, std::move(e));
}

double Graph::edge_density() const noexcept {
    if (n_ == 0) return 0.0;
    return static_cast<double>(edges_.size()) / (static_cast<double>(n_) * static_cast<double>(n_));
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
    std::vector<std::int64_t> position(n_, -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (vertices[i] >= n_ || (i > 0 && vertices[i] <= vertices[i - 1])) {
            throw Error(ErrorKind::invalid_argument, "induced subgraph vertices must be increasing and in range");
        }
        position[vertices[i]] = static_cast<std::int64_t>(i);
    }
    std::vector<Edge> e;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (auto nb : neighbors(vertices[i])) {
            auto p = position[nb];
            if (p > static_cast<std::int64_t>(i)) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(p));
        }
    }
    return Graph(vertices.size(), std::move(e));
}

Subgraph remove_isolated(const Graph& g) {
    Subgraph out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) > 0) out.original_ids.push_back(v);
    }
    out.graph = g.induced(out.original_ids);
    return out;
}

std::size_t celebrity_core_size(std::size_t n, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw Error(ErrorKind::invalid_argument, "alpha must lie in (0, 1)");
    }
    const long double exponent = (1.0L + alpha) / 2.0L;
    auto k = static_cast<std::size_t>(std::floor(std::pow(static_cast<long double>(n), exponent)));
    // k is the largest integer with k^(1/exponent) <= n.
    auto fits = [&](std::size_t c) {
        long double back = std::pow(static_cast<long double>(c), 1.0L / exponent);
        return back <= static_cast<long double>(n) * (1.0L + 1e-15L);
    };
    while (k + 1 <= n && fits(k + 1)) ++k;
    while (k > 0 && !fits(k)) --k;
    return std::min(k, n);
}

Graph celebrity_graph(std::size_t n, double alpha) {
    const std::size_t k = celebrity_core_size(n, alpha);
    std::vector<Edge> e;
    e.reserve(k * (k > 0 ? k - 1 : 0) / 2);
    for (Vertex i = 0; i < k; ++i)
        for (Vertex j = i + 1; j < k; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

}  // namespace sgsp
