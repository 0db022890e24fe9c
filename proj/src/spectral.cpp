#include "sgsp/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sgsp/error.hpp"

namespace sgsp {

EdgeScale parse_edge_scale(std::string_view text) {
    if (text == "E") return EdgeScale::edges;
    if (text == "2E") return EdgeScale::twice_edges;
    throw Error(ErrorKind::invalid_argument, fmt::format("edge scale must be E or 2E, got '{}'", text));
}

std::string_view to_string(EdgeScale s) noexcept { return s == EdgeScale::edges ? "E" : "2E"; }

std::string_view to_string(FitModel m) noexcept {
    switch (m) {
        case FitModel::generalized: return "generalized";
        case FitModel::classical: return "classical";
        case FitModel::graphing: return "graphing";
    }
    return "unknown";
}

std::map<int, double> eigenvalues_at(const EigenReport& report, std::span<const int> ts) {
    std::map<int, double> out;
    for (int t : ts) {
        if (t == 0) throw Error(ErrorKind::invalid_argument, "eigenvalue index t = 0 is undefined");
        const auto& list = t > 0 ? report.positive : report.negative;
        const auto idx = static_cast<std::size_t>(std::abs(t)) - 1;
        out[t] = idx < list.size() ? list[idx] : 0.0;
    }
    return out;
}

namespace {

std::pair<std::size_t, std::size_t> counts_for(std::span<const int> ts, std::size_t n) {
    std::size_t kp = 0, kn = 0;
    for (int t : ts) {
        if (t == 0) throw Error(ErrorKind::invalid_argument, "eigenvalue index t = 0 is undefined");
        if (t > 0) kp = std::max(kp, static_cast<std::size_t>(t));
        if (t < 0) kn = std::max(kn, static_cast<std::size_t>(-t));
    }
    kp = std::min(kp, n);
    kn = std::min(kn, n - kp);
    return {kp, kn};
}

double edge_x(std::size_t edges, EdgeScale s) {
    const double e = static_cast<double>(edges);
    return std::sqrt(s == EdgeScale::edges ? e : 2.0 * e);
}

}  // namespace

std::map<int, double> scaled_spectrum(const Graph& g, std::span<const int> ts, const EigenOptions& options) {
    if (g.edge_count() == 0) throw Error(ErrorKind::empty_graph, "scaled spectrum of a graph without edges");
    auto [kp, kn] = counts_for(ts, g.vertex_count());
    auto values = eigenvalues_at(eigensolve(g, kp, kn, options), ts);
    const double scale = edge_x(g.edge_count(), EdgeScale::twice_edges);
    for (auto& [t, v] : values) v /= scale;
    return values;
}

std::vector<TrajectoryPoint> trajectory(std::span<const Graph> graphs, std::span<const int> ts,
                                        const EigenOptions& options) {
    std::vector<TrajectoryPoint> out;
    out.reserve(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const Graph& g = graphs[i];
        try {
            auto [kp, kn] = counts_for(ts, g.vertex_count());
            out.push_back({i, g.vertex_count(), g.edge_count(), eigenvalues_at(eigensolve(g, kp, kn, options), ts)});
        } catch (const Error& e) {
            throw Error(e.kind(), fmt::format("trajectory step {}: {}", i, e.what()));
        }
    }
    return out;
}

LineFit fit_through_origin(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw Error(ErrorKind::invalid_argument, "fit needs matching non-empty data");
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += x[i] * y[i];
        sxx += x[i] * x[i];
    }
    if (!(sxx > 0.0)) throw Error(ErrorKind::zero_design, "all abscissae are zero");
    LineFit f{sxy / sxx, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.slope * x[i];
        f.mse += r * r;
    }
    f.mse /= static_cast<double>(x.size());
    return f;
}

LineFit fit_horizontal(std::span<const double> y) {
    if (y.empty()) throw Error(ErrorKind::invalid_argument, "fit needs non-empty data");
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    LineFit f{mean, 0.0};
    for (double v : y) f.mse += (v - mean) * (v - mean);
    f.mse /= static_cast<double>(y.size());
    return f;
}

std::array<FitReport, 3> fit_models(std::span<const TrajectoryPoint> traj, std::size_t tail_from, int t,
                                    EdgeScale scale) {
    if (tail_from >= traj.size() || traj.size() - tail_from < 2) {
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("tail window [{}, {}) has fewer than 2 points", tail_from, traj.size()));
    }
    std::vector<double> xe, xv, y;
    for (std::size_t i = tail_from; i < traj.size(); ++i) {
        const auto& p = traj[i];
        auto it = p.lambda.find(t);
        if (it == p.lambda.end()) throw Error(ErrorKind::invalid_argument, fmt::format("t = {} was not tracked", t));
        xe.push_back(edge_x(p.edges, scale));
        xv.push_back(static_cast<double>(p.vertices));
        y.push_back(it->second);
    }
    const std::size_t n = y.size();
    auto g = fit_through_origin(xe, y);
    auto c = fit_through_origin(xv, y);
    auto h = fit_horizontal(y);
    return {FitReport{FitModel::generalized, t, g.slope, g.mse, n}, FitReport{FitModel::classical, t, c.slope, c.mse, n},
            FitReport{FitModel::graphing, t, h.slope, h.mse, n}};
}

MovingAverages moving_scaled_averages(std::span<const TrajectoryPoint> traj, int t, std::size_t window) {
    if (window == 0 || window > traj.size()) {
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("window {} does not fit a trajectory of length {}", window, traj.size()));
    }
    MovingAverages out;
    out.t = t;
    for (std::size_t n = 0; n + window <= traj.size(); ++n) {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < window; ++i) {
            const auto& p = traj[n + i];
            auto it = p.lambda.find(t);
            if (it == p.lambda.end()) throw Error(ErrorKind::invalid_argument, fmt::format("t = {} was not tracked", t));
            if (p.vertices == 0 || p.edges == 0) {
                throw Error(ErrorKind::empty_graph, fmt::format("trajectory point {} has no edges", p.n_index));
            }
            a += it->second / static_cast<double>(p.vertices);
            b += it->second / std::sqrt(static_cast<double>(p.edges));
        }
        out.by_vertices.push_back(a / static_cast<double>(window));
        out.by_edges.push_back(b / static_cast<double>(window));
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> traj, EdgeScale scale) {
    out << "n_index,V,E,t,lambda,scaled_classical,scaled_generalized\n";
    for (const auto& p : traj) {
        for (const auto& [t, lam] : p.lambda) {
            const double sc = p.vertices ? lam / static_cast<double>(p.vertices) : 0.0;
            const double sg = p.edges ? lam / edge_x(p.edges, scale) : 0.0;
            out << fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g}\n", p.n_index, p.vertices, p.edges, t, lam, sc, sg);
        }
    }
}

}  // namespace sgsp
