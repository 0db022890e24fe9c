#pragma once

#include <array>
#include <map>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "sgsp/eigensolver.hpp"
#include "sgsp/graph.hpp"

namespace sgsp {

/// How edge counts enter the generalized scaling: sqrt(|E|) or sqrt(2|E|).
enum class EdgeScale { edges, twice_edges };

EdgeScale parse_edge_scale(std::string_view text);  // "E" or "2E"
std::string_view to_string(EdgeScale s) noexcept;

/// lambda_t for t in `ts`: t > 0 counts from the top, t < 0 from the bottom.
/// t = 0 is rejected.
std::map<int, double> eigenvalues_at(const EigenReport& report, std::span<const int> ts);

/// lambda_t / sqrt(2|E|) for each t.
std::map<int, double> scaled_spectrum(const Graph& g, std::span<const int> ts, const EigenOptions& options = {});

struct TrajectoryPoint {
    std::size_t n_index = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::map<int, double> lambda;
};

std::vector<TrajectoryPoint> trajectory(std::span<const Graph> graphs, std::span<const int> ts,
                                        const EigenOptions& options = {});

enum class FitModel { generalized, classical, graphing };
std::string_view to_string(FitModel m) noexcept;

struct FitReport {
    FitModel model = FitModel::generalized;
    int t = 1;
    double slope = 0.0;  // level of the horizontal line for `graphing`
    double mse = 0.0;
    std::size_t points = 0;
};

struct LineFit {
    double slope = 0.0;
    double mse = 0.0;
};

/// Least squares line y = k x: k = sum xy / sum x^2.
LineFit fit_through_origin(std::span<const double> x, std::span<const double> y);
/// Least squares horizontal line y = mean(y).
LineFit fit_horizontal(std::span<const double> y);

/// Fits the three models to lambda_t over points [tail_from, end).
std::array<FitReport, 3> fit_models(std::span<const TrajectoryPoint> traj, std::size_t tail_from, int t,
                                    EdgeScale scale = EdgeScale::twice_edges);

struct MovingAverages {
    int t = 1;
    std::vector<double> by_vertices;  // a_{t,n}: mean of lambda / |V|
    std::vector<double> by_edges;     // b_{t,n}: mean of lambda / sqrt(|E|)
};

MovingAverages moving_scaled_averages(std::span<const TrajectoryPoint> traj, int t, std::size_t window = 5);

/// Columns n_index,V,E,t,lambda,scaled_classical,scaled_generalized.
void write_trajectory_csv(std::ostream& out, std::span<const TrajectoryPoint> traj,
                          EdgeScale scale = EdgeScale::twice_edges);

}  // namespace sgsp
