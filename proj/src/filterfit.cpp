#include "sgsp/filterfit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "sgsp/error.hpp"
#include "sgsp/rng.hpp"
#include "sgsp/sampling.hpp"

namespace sgsp {

std::vector<Vertex> top_degree_vertices(const Graph& g, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw Error(ErrorKind::invalid_argument, "top degree fraction must lie in (0, 1]");
    }
    const std::size_t n = g.vertex_count();
    if (n == 0) throw Error(ErrorKind::empty_graph, "diffusion on a graph without vertices");
    const auto count = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))),
                                               1, n);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    order.resize(count);
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<double> apply_graph_filter(const CsrMatrix& a, std::span<const double> coefficients,
                                       std::span<const double> f, double scale) {
    std::vector<double> acc(f.size(), 0.0);
    if (coefficients.empty()) return acc;
    for (std::size_t i = 0; i < f.size(); ++i) acc[i] = coefficients.back() * f[i];
    std::vector<double> tmp(f.size());
    for (std::size_t c = coefficients.size() - 1; c-- > 0;) {
        a.multiply(acc, tmp, scale);
        for (std::size_t i = 0; i < f.size(); ++i) acc[i] = tmp[i] + coefficients[c] * f[i];
    }
    return acc;
}

Diffusion synthesize_diffusion(const Graph& g, const DiffusionSpec& spec, std::uint64_t seed) {
    if (g.vertex_count() == 0) throw Error(ErrorKind::empty_graph, "diffusion on a graph without vertices");
    Diffusion d;
    d.coefficients = spec.coefficients;
    if (d.coefficients.empty()) {
        Philox coef_rng(seed, 0x636f6566u);
        d.coefficients.resize(spec.degree + 1);
        for (auto& c : d.coefficients) c = coef_rng.uniform();
    }
    d.sources = top_degree_vertices(g, spec.top_degree_fraction);
    d.input.assign(g.vertex_count(), 0.0);
    Philox rng(seed, 0x7369676eu);
    for (Vertex v : d.sources) d.input[v] = rng.uniform();
    d.output = apply_graph_filter(g.adjacency(), d.coefficients, d.input);
    return d;
}

double shift_scale(const Graph& g, Scaling scaling, double m) {
    if (scaling == Scaling::classical) {
        const double size = m > 0.0 ? m : static_cast<double>(g.vertex_count());
        if (!(size > 0.0)) throw Error(ErrorKind::empty_graph, "classical scaling of a graph without vertices");
        return 1.0 / size;
    }
    if (g.edge_count() == 0) throw Error(ErrorKind::empty_graph, "generalized scaling of a graph without edges");
    return 1.0 / std::sqrt(2.0 * static_cast<double>(g.edge_count()));
}

FilterFit fit_filter(std::span<const double> f, std::span<const double> g_out, const Graph& g, std::size_t degree,
                     Scaling scaling, double m) {
    const std::size_t n = g.vertex_count();
    if (f.size() != n || g_out.size() != n) {
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("signals have {} and {} entries for {} vertices", f.size(), g_out.size(), n));
    }
    if (degree + 1 > n) {
        throw Error(ErrorKind::invalid_argument, fmt::format("degree {} needs more than {} vertices", degree, n));
    }
    FilterFit out;
    out.scaling = scaling;
    out.scale = shift_scale(g, scaling, m);

    const auto rows = static_cast<Eigen::Index>(n), cols = static_cast<Eigen::Index>(degree + 1);
    Eigen::MatrixXd x(rows, cols);
    std::vector<double> col(f.begin(), f.end()), next(n);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index i = 0; i < rows; ++i) x(i, c) = col[static_cast<std::size_t>(i)];
        if (c + 1 < cols) {
            g.adjacency().multiply(col, next, out.scale);
            col.swap(next);
        }
    }
    Eigen::VectorXd norms = x.colwise().norm();
    for (Eigen::Index c = 0; c < cols; ++c) {
        if (!(norms(c) > 0.0)) {
            throw Error(ErrorKind::zero_design,
                        fmt::format("design column {} is zero (signal vanishes on this graph)", c));
        }
        x.col(c) /= norms(c);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const auto& sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(out.condition <= max_condition)) {
        throw Error(ErrorKind::rank_deficient,
                    fmt::format("design condition number {:.3e} exceeds {:.0e}; try a degree below {}", out.condition,
                                max_condition, degree));
    }
    const Eigen::Map<const Eigen::VectorXd> y(g_out.data(), rows);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    Eigen::VectorXd beta = qr.solve(y);
    out.residual_norm = (x * beta - y).norm();
    out.filter.coefficients.resize(degree + 1);
    for (Eigen::Index c = 0; c < cols; ++c) out.filter.coefficients[static_cast<std::size_t>(c)] = beta(c) / norms(c);
    return out;
}

CoefficientTrajectory coefficient_trajectory(const Graph& g, std::span<const std::size_t> sizes, const Diffusion& d,
                                             std::size_t degree, std::uint64_t seed, bool drop_isolated) {
    if (sizes.empty() || sizes.back() != g.vertex_count()) {
        throw Error(ErrorKind::invalid_argument, "subgraph sizes must end with the full vertex count");
    }
    for (std::size_t k = 1; k < sizes.size(); ++k) {
        if (sizes[k] <= sizes[k - 1]) throw Error(ErrorKind::invalid_argument, "subgraph sizes must increase");
    }
    CoefficientTrajectory traj;
    traj.degree = degree;
    const auto subs = nested_subgraphs(g, sizes, seed, drop_isolated);
    for (std::size_t k = 0; k < subs.size(); ++k) {
        const auto& sub = subs[k];
        CoefficientEntry e;
        e.k = k + 1;
        e.m = sizes[k];
        e.vertices = sub.graph.vertex_count();
        e.edges = sub.graph.edge_count();
        std::vector<double> f(e.vertices), y(e.vertices);
        for (std::size_t i = 0; i < e.vertices; ++i) {
            f[i] = d.input[sub.original_ids[i]];
            y[i] = d.output[sub.original_ids[i]];
        }
        try {
            e.classical = fit_filter(f, y, sub.graph, degree, Scaling::classical, static_cast<double>(e.m))
                              .filter.coefficients.back();
            e.generalized = fit_filter(f, y, sub.graph, degree, Scaling::generalized).filter.coefficients.back();
        } catch (const Error& err) {
            e.classical.reset();
            e.generalized.reset();
            e.error = fmt::format("k={} (m={}): {}", e.k, e.m, err.what());
        }
        traj.entries.push_back(std::move(e));
    }
    return traj;
}

std::vector<std::size_t> even_sizes(std::size_t n, std::size_t count) {
    if (count == 0 || count > n) throw Error(ErrorKind::invalid_argument, "need 1 <= count <= n subgraph sizes");
    std::vector<std::size_t> out(count);
    for (std::size_t k = 1; k <= count; ++k) out[k - 1] = n * k / count;
    out.back() = n;
    return out;
}

std::size_t default_tail_from(std::size_t length) {
    const auto tail = static_cast<std::size_t>(std::ceil(0.16 * static_cast<double>(length)));
    return length - std::min(length, std::max<std::size_t>(tail, 2));
}

RatioSequence convergence_ratios(std::span<const std::optional<double>> c, std::size_t tail_from) {
    if (tail_from >= c.size() || c.size() - tail_from < 2) {
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("tail window [{}, {}) has fewer than 2 entries", tail_from, c.size()));
    }
    RatioSequence out;
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = tail_from; i < c.size(); ++i) {
        if (c[i]) {
            sum += *c[i];
            ++count;
        }
    }
    if (count == 0 || !c.back()) throw Error(ErrorKind::invalid_argument, "tail window has no fitted coefficients");
    out.tail_mean = sum / static_cast<double>(count);
    const double denom = std::abs(*c.back() - out.tail_mean);
    out.r.assign(c.size() - 1, std::nullopt);
    if (denom < 1e-15) {
        out.exact_convergence = true;
        return out;
    }
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
        if (c[k] && c[k + 1]) out.r[k] = std::abs(*c[k + 1] - *c[k]) / denom;
    }
    return out;
}

ConvergenceRatios convergence_ratios(const CoefficientTrajectory& traj, std::size_t tail_from) {
    std::vector<std::optional<double>> cl, ge;
    for (const auto& e : traj.entries) {
        cl.push_back(e.classical);
        ge.push_back(e.generalized);
    }
    return {convergence_ratios(cl, tail_from), convergence_ratios(ge, tail_from)};
}

namespace {

std::string field(const std::optional<double>& v) { return v ? fmt::format("{:.17g}", *v) : std::string(); }

std::string ratio_field(const RatioSequence& r, std::size_t k) {
    if (r.exact_convergence) return "exact";
    return k < r.r.size() ? field(r.r[k]) : std::string();
}

std::optional<double> signed_sqrt(const std::optional<double>& v) {
    if (!v) return std::nullopt;
    return std::copysign(std::sqrt(std::abs(*v)), *v);
}

}  // namespace

void write_coefficient_csv(std::ostream& out, const CoefficientTrajectory& traj, const ConvergenceRatios& ratios) {
    out << "k,m_k,E_k,c_classical,c_generalized,r_classical,r_generalized\n";
    for (std::size_t i = 0; i < traj.entries.size(); ++i) {
        const auto& e = traj.entries[i];
        out << fmt::format("{},{},{},{},{},{},{}\n", e.k, e.m, e.edges, field(e.classical), field(e.generalized),
                           ratio_field(ratios.classical, i), ratio_field(ratios.generalized, i));
    }
}

void write_coefficient_sqrt_csv(std::ostream& out, const CoefficientTrajectory& traj) {
    out << "k,m_k,sqrt_classical,sqrt_generalized\n";
    for (const auto& e : traj.entries) {
        out << fmt::format("{},{},{},{}\n", e.k, e.m, field(signed_sqrt(e.classical)), field(signed_sqrt(e.generalized)));
    }
}

}  // namespace sgsp
