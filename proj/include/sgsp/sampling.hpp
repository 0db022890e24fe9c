#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgsp/graph.hpp"
#include "sgsp/graphon.hpp"
#include "sgsp/signal.hpp"

namespace sgsp {

/// Sorted latent positions of the sampled vertices.
struct SamplePoints {
    std::size_t m_index = 0;
    double t = 0.0;
    std::vector<double> xs;
};

struct SampledGraph {
    Graph graph;
    SamplePoints points;
    std::uint64_t seed = 0;
};

/// |E| / C(n, 2): the unbiased estimate of ||W_m||_1 / t_m^2 for a sampled
/// graph. Graph::edge_density (|E| / n^2) tends to half of that limit.
double pair_density(const Graph& g) noexcept;

/// n i.i.d. uniform points on [0, t], sorted ascending.
SamplePoints sample_points(double t, std::size_t n, std::uint64_t seed);

/// Vertices at sorted uniform points of [0, t]; edge ij present with
/// probability w(x_i, x_j). Deterministic in `seed`.
SampledGraph sample_graph(const GraphonSpec& w, double t, std::size_t n, std::uint64_t seed);

/// Graph over already drawn points.
SampledGraph sample_graph(const GraphonSpec& w, const SamplePoints& points, std::uint64_t seed);

/// cells[m][j] is the graph for (t[m], n[j]); each cell has its own derived seed.
struct SampleGrid {
    std::vector<double> t;
    std::vector<std::size_t> n;
    std::vector<std::vector<SampledGraph>> cells;
};

SampleGrid sample_double_sequence(const GraphonSpec& w, std::span<const double> t_schedule,
                                  std::span<const std::size_t> n_schedule, std::uint64_t seed);

struct SubsequenceOptions {
    bool check_distance = true;
    double slack = 0.0;  // added to the 1/m tolerances
    // restricted target resolution and the cap on grid size for comparisons
    std::size_t target_cells = 256;
    std::size_t max_cells = 1024;
    std::uint64_t seed = 0;
};

/// Per-cell diagnostics of the sparse subsequence search.
struct SubsequenceCell {
    std::size_t m = 0;
    std::size_t n = 0;
    double density = 0.0;
    double target_density = 0.0;
    double distance = 0.0;  // NaN when not computed
    bool accepted = false;
};

struct SparseSubsequence {
    // phi[m] = smallest qualifying n for t[m], when there is one
    std::vector<std::optional<std::size_t>> phi;
    std::vector<double> tolerance;  // 1/m with m counted from 1
    std::vector<std::size_t> gaps;  // m indices with no qualifying n
    std::vector<SubsequenceCell> cells;
};

/// For each m picks the smallest n whose pair density is within 1/m of
/// ||W_m||_1 / t_m^2 and (optionally) stretched cut distance to the
/// restricted target within 1/m. phi never decreases along m. Unmet m are
/// listed in `gaps`.
SparseSubsequence extract_sparse_subsequence(const SampleGrid& grid, const GraphonSpec& w,
                                             const SubsequenceOptions& options = {});

/// Heuristic stretched cut distance between a sampled graph and W(t x, t y)
/// on [0, 1]^2.
double sampled_target_distance(const Graph& g, const GraphonSpec& w, double t, const SubsequenceOptions& options);

/// Step signal on [0, 1] with one step per point carrying f(x_i).
StepSignal sample_signal(const SignalProfile& f, const SamplePoints& points);

struct GrowthSchedule {
    std::size_t batch = 200;
    std::size_t steps = 1;
    bool drop_isolated = true;
};

/// Nested induced subgraphs on the first sizes[k] vertices of one random order.
/// Vertex sets are nested before isolated vertices are dropped.
std::vector<Subgraph> nested_subgraphs(const Graph& g, std::span<const std::size_t> sizes, std::uint64_t seed,
                                       bool drop_isolated);

/// Adds `batch` random new vertices per step, `steps` times.
std::vector<Subgraph> grow_subgraphs(const Graph& g, const GrowthSchedule& schedule, std::uint64_t seed);

}  // namespace sgsp
