#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sgsp/csr.hpp"

namespace sgsp {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph on vertices 0..n-1.
///
/// Edges are stored once as (i, j) with i < j, sorted. Reversed and repeated
/// pairs passed to the constructor collapse to one edge; self-loops and
/// out-of-range indices are rejected.
class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::vector<Edge> edges);

    static Graph complete(std::size_t n);
    static Graph path(std::size_t n);
    /// Vertex 0 joined to vertices 1..leaves.
    static Graph star(std::size_t leaves);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    /// |E| / n^2.
    double edge_density() const noexcept;

    std::span<const Edge> edges() const noexcept { return edges_; }
    const CsrMatrix& adjacency() const noexcept { return adjacency_; }
    std::size_t degree(Vertex v) const noexcept { return adjacency_.row_cols(v).size(); }
    std::span<const std::uint32_t> neighbors(Vertex v) const noexcept { return adjacency_.row_cols(v); }
    bool has_edge(Vertex a, Vertex b) const noexcept { return adjacency_.at(a, b) != 0.0; }

    /// Induced subgraph on `vertices` (strictly increasing original ids);
    /// new vertex i is vertices[i].
    Graph induced(std::span<const Vertex> vertices) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    CsrMatrix adjacency_;
};

/// Subgraph with the map back to the vertex ids of its parent.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> original_ids;  // original_ids[new] = old
};

/// Drops vertices of degree zero and renumbers the rest consecutively,
/// preserving order.
Subgraph remove_isolated(const Graph& g);

/// Clique on the first floor(n^((1+alpha)/2)) vertices, the rest isolated.
Graph celebrity_graph(std::size_t n, double alpha);
/// floor(n^((1+alpha)/2)) computed without pow() rounding surprises.
std::size_t celebrity_core_size(std::size_t n, double alpha);

}  // namespace sgsp
