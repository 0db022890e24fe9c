#include "sgsp/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "sgsp/cut_metric.hpp"
#include "sgsp/error.hpp"
#include "sgsp/rng.hpp"

namespace sgsp {

namespace {

constexpr std::uint64_t points_stream = 1;
constexpr std::uint64_t edges_stream = 2;

}  // namespace

double pair_density(const Graph& g) noexcept {
    const auto n = static_cast<double>(g.vertex_count());
    return n < 2.0 ? 0.0 : static_cast<double>(g.edge_count()) / (0.5 * n * (n - 1.0));
}

SamplePoints sample_points(double t, std::size_t n, std::uint64_t seed) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::invalid_argument, "sampling length t must be positive");
    if (n == 0) throw Error(ErrorKind::invalid_argument, "sample size n must be >= 1");
    Philox rng(seed, points_stream);
    SamplePoints p;
    p.t = t;
    p.xs.resize(n);
    for (auto& x : p.xs) x = rng.uniform() * t;
    std::sort(p.xs.begin(), p.xs.end());
    return p;
}

SampledGraph sample_graph(const GraphonSpec& w, const SamplePoints& points, std::uint64_t seed) {
    const auto& xs = points.xs;
    const std::size_t n = xs.size();
    if (!std::is_sorted(xs.begin(), xs.end())) throw Error(ErrorKind::unsorted_points, "sample points are not sorted");
    const Philox rng(seed, edges_stream);
    const double support = w.support();
    // points are sorted, so everything past the support is a tail
    const std::size_t active = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), support) - xs.begin());

    // rank-one kernels factor, which saves an exp per pair
    std::vector<double> factor;
    double amplitude = 0.0;
    if (const auto* e = std::get_if<RankOneExp>(&w.variant())) {
        amplitude = e->amplitude;
        factor.resize(active);
        for (std::size_t i = 0; i < active; ++i) factor[i] = std::exp(-e->decay * xs[i]);
    }

    std::vector<Edge> edges;
    for (std::size_t i = 1; i < active; ++i) {
        const std::uint64_t base = static_cast<std::uint64_t>(i) * (i - 1) / 2;
        for (std::size_t j = 0; j < i; ++j) {
            const double p = factor.empty() ? w.eval(xs[j], xs[i]) : amplitude * factor[i] * factor[j];
            if (p <= 0.0) continue;
            if (p > 1.0) {
                throw Error(ErrorKind::probability_range,
                            fmt::format("edge probability {:.17g} > 1 at (x, y) = ({:.17g}, {:.17g})", p, xs[j], xs[i]));
            }
            if (rng.uniform_at(base + j) < p) edges.emplace_back(static_cast<Vertex>(j), static_cast<Vertex>(i));
        }
    }
    return {Graph(n, std::move(edges)), points, seed};
}

SampledGraph sample_graph(const GraphonSpec& w, double t, std::size_t n, std::uint64_t seed) {
    return sample_graph(w, sample_points(t, n, seed), seed);
}

SampleGrid sample_double_sequence(const GraphonSpec& w, std::span<const double> t_schedule,
                                  std::span<const std::size_t> n_schedule, std::uint64_t seed) {
    for (std::size_t m = 1; m < t_schedule.size(); ++m) {
        if (!(t_schedule[m] > t_schedule[m - 1])) {
            throw Error(ErrorKind::invalid_argument,
                        fmt::format("t schedule must be strictly increasing (t[{}] = {} after {})", m, t_schedule[m],
                                    t_schedule[m - 1]));
        }
    }
    SampleGrid grid;
    grid.t.assign(t_schedule.begin(), t_schedule.end());
    grid.n.assign(n_schedule.begin(), n_schedule.end());
    grid.cells.resize(t_schedule.size());
    for (std::size_t m = 0; m < t_schedule.size(); ++m) {
        for (std::size_t j = 0; j < n_schedule.size(); ++j) {
            auto cell = sample_graph(w, t_schedule[m], n_schedule[j], derive_seed(seed, m, j));
            cell.points.m_index = m;
            grid.cells[m].push_back(std::move(cell));
        }
    }
    return grid;
}

double sampled_target_distance(const Graph& g, const GraphonSpec& w, double t, const SubsequenceOptions& options) {
    const StepGraphon target = restrict_to(w, t, options.target_cells);
    const bool graph_empty = g.edge_count() == 0;
    const bool target_empty = !(target.l1_norm() > 0.0);
    if (graph_empty || target_empty) {
        return graph_empty && target_empty ? 0.0 : std::numeric_limits<double>::infinity();
    }
    AlignOptions align;
    align.mode = AlignMode::degree_sort;
    align.cut.restarts = 8;
    align.cut.seed = options.seed;

    const std::size_t n = g.vertex_count();
    const StepGraphon graph_s = canonical_graphon(g).stretched(std::sqrt(2.0 * static_cast<double>(g.edge_count())) /
                                                             static_cast<double>(n));
    const auto [target_spec, tag] = stretch(GraphonSpec(target));
    (void)tag;
    const double width = graph_s.cell_width();
    const auto cells = std::max(n, static_cast<std::size_t>(std::ceil(target_spec.support() / width)));
    if (cells <= options.max_cells) {
        // graph kept exactly; only the target is sampled onto its grid
        const StepGraphon padded = graph_s.padded(cells);
        const StepGraphon on_grid = discretize(target_spec, cells, padded.support());
        return cut_distance_steps(padded, on_grid, align).distance;
    }
    align.refine_k = options.max_cells;
    return stretched_cut_distance(GraphonSpec(canonical_graphon(g)), GraphonSpec(target), align).distance;
}

SparseSubsequence extract_sparse_subsequence(const SampleGrid& grid, const GraphonSpec& w,
                                             const SubsequenceOptions& options) {
    if (grid.cells.empty() || grid.n.empty()) throw Error(ErrorKind::invalid_argument, "empty sample grid");
    SparseSubsequence out;
    std::vector<std::size_t> order(grid.n.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return grid.n[a] < grid.n[b]; });

    std::size_t floor_n = 0;  // phi is kept non-decreasing
    for (std::size_t m = 0; m < grid.cells.size(); ++m) {
        const double t = grid.t[m];
        const double eps = 1.0 / static_cast<double>(m + 1) + options.slack;
        const double target = restricted_l1_norm(w, t) / (t * t);
        out.tolerance.push_back(eps);
        std::optional<std::size_t> chosen;
        for (std::size_t j : order) {
            if (grid.n[j] < floor_n) continue;
            const auto& g = grid.cells[m][j].graph;
            SubsequenceCell cell{m, grid.n[j], pair_density(g), target, std::numeric_limits<double>::quiet_NaN(),
                                 false};
            bool ok = std::abs(cell.density - target) <= eps;
            if (ok && options.check_distance) {
                cell.distance = sampled_target_distance(g, w, t, options);
                ok = cell.distance <= eps;
            }
            cell.accepted = ok;
            out.cells.push_back(cell);
            if (ok) {
                chosen = grid.n[j];
                floor_n = grid.n[j];
                break;
            }
        }
        if (!chosen) out.gaps.push_back(m);
        out.phi.push_back(chosen);
    }
    return out;
}

StepSignal sample_signal(const SignalProfile& f, const SamplePoints& points) {
    const auto& xs = points.xs;
    if (!std::is_sorted(xs.begin(), xs.end())) throw Error(ErrorKind::unsorted_points, "sample points are not sorted");
    if (xs.empty()) throw Error(ErrorKind::invalid_argument, "no sample points");
    std::vector<double> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = eval(f, xs[i]);
    return StepSignal(1.0, std::move(v));
}

std::vector<Subgraph> nested_subgraphs(const Graph& g, std::span<const std::size_t> sizes, std::uint64_t seed,
                                       bool drop_isolated) {
    const std::size_t n = g.vertex_count();
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (sizes[k] > n) {
            throw Error(ErrorKind::schedule_too_large,
                        fmt::format("subgraph size {} exceeds the {} vertices available", sizes[k], n));
        }
        if (k > 0 && sizes[k] < sizes[k - 1]) throw Error(ErrorKind::invalid_argument, "subgraph sizes must not decrease");
    }
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    Philox rng(seed, 0x67726f77u);
    shuffle(std::span<Vertex>(order), rng);

    std::vector<Subgraph> out;
    out.reserve(sizes.size());
    for (std::size_t size : sizes) {
        std::vector<Vertex> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(chosen.begin(), chosen.end());
        Graph sub = g.induced(chosen);
        if (drop_isolated) {
            Subgraph s = remove_isolated(sub);
            for (auto& id : s.original_ids) id = chosen[id];
            out.push_back(std::move(s));
        } else {
            out.push_back({std::move(sub), std::move(chosen)});
        }
    }
    return out;
}

std::vector<Subgraph> grow_subgraphs(const Graph& g, const GrowthSchedule& schedule, std::uint64_t seed) {
    if (schedule.batch == 0 || schedule.steps == 0) {
        throw Error(ErrorKind::invalid_argument, "growth batch and steps must be >= 1");
    }
    if (schedule.batch > g.vertex_count() / schedule.steps) {
        throw Error(ErrorKind::schedule_too_large,
                    fmt::format("{} steps of {} vertices exceed the {} available", schedule.steps, schedule.batch,
                                g.vertex_count()));
    }
    std::vector<std::size_t> sizes(schedule.steps);
    for (std::size_t s = 0; s < schedule.steps; ++s) sizes[s] = schedule.batch * (s + 1);
    return nested_subgraphs(g, sizes, seed, schedule.drop_isolated);
}

}  // namespace sgsp
