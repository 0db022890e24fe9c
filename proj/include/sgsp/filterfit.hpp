#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sgsp/graph.hpp"
#include "sgsp/operators.hpp"

namespace sgsp {

struct DiffusionSpec {
    double top_degree_fraction = 0.10;
    std::size_t degree = 3;
    // c0..cd; drawn uniform on [0, 1] from the seed when empty
    std::vector<double> coefficients;
};

struct Diffusion {
    std::vector<double> input;   // f
    std::vector<double> output;  // sum c_i A^i f
    std::vector<double> coefficients;
    std::vector<Vertex> sources;  // vertices carrying the random input
};

/// The ceil(fraction * n) highest-degree vertices (at least one), ties to the
/// lower index, in increasing vertex order.
std::vector<Vertex> top_degree_vertices(const Graph& g, double fraction);

/// sum c_i (scale A)^i f by Horner's rule with sparse products.
std::vector<double> apply_graph_filter(const CsrMatrix& a, std::span<const double> coefficients,
                                       std::span<const double> f, double scale = 1.0);

Diffusion synthesize_diffusion(const Graph& g, const DiffusionSpec& spec, std::uint64_t seed);

enum class Scaling { classical, generalized };

/// 1/m for classical (m = vertex count unless given), 1/sqrt(2|E|) for generalized.
double shift_scale(const Graph& g, Scaling scaling, double m = 0.0);

struct FilterFit {
    PolynomialFilter filter;  // coefficients in the basis (scale A)^i
    Scaling scaling = Scaling::generalized;
    double scale = 1.0;
    double condition = 1.0;     // of the column-equilibrated design
    double residual_norm = 0.0;
};

/// Least squares fit of g_out against the columns (scale A)^i f, i = 0..d,
/// by column-pivoted QR after equilibrating the columns.
FilterFit fit_filter(std::span<const double> f, std::span<const double> g_out, const Graph& g, std::size_t degree,
                     Scaling scaling, double m = 0.0);

/// Largest design condition number fit_filter accepts.
inline constexpr double max_condition = 1e12;

struct CoefficientEntry {
    std::size_t k = 0;
    std::size_t m = 0;       // vertices sampled
    std::size_t vertices = 0;  // after dropping isolated ones
    std::size_t edges = 0;
    std::optional<double> classical;
    std::optional<double> generalized;
    std::string error;
};

struct CoefficientTrajectory {
    std::size_t degree = 0;
    std::vector<CoefficientEntry> entries;
};

/// Fits both scalings on nested induced subgraphs of the given sizes (the
/// last must be the whole graph) and records the leading coefficients.
/// Signals follow their vertices into each subgraph.
CoefficientTrajectory coefficient_trajectory(const Graph& g, std::span<const std::size_t> sizes, const Diffusion& d,
                                             std::size_t degree, std::uint64_t seed, bool drop_isolated = true);

/// floor(n k / K) for k = 1..K, with the last equal to n.
std::vector<std::size_t> even_sizes(std::size_t n, std::size_t count);

/// Start of the final 16% of a length-K sequence.
std::size_t default_tail_from(std::size_t length);

struct RatioSequence {
    std::vector<std::optional<double>> r;  // r[k] compares entries k and k+1
    double tail_mean = 0.0;
    bool exact_convergence = false;  // |last - tail mean| < 1e-15
};

RatioSequence convergence_ratios(std::span<const std::optional<double>> coefficients, std::size_t tail_from);

struct ConvergenceRatios {
    RatioSequence classical;
    RatioSequence generalized;
};

ConvergenceRatios convergence_ratios(const CoefficientTrajectory& traj, std::size_t tail_from);

/// Columns k,m_k,E_k,c_classical,c_generalized,r_classical,r_generalized;
/// missing values are empty fields.
void write_coefficient_csv(std::ostream& out, const CoefficientTrajectory& traj, const ConvergenceRatios& ratios);
/// Signed square roots sign(c) sqrt|c| of the same coefficients.
void write_coefficient_sqrt_csv(std::ostream& out, const CoefficientTrajectory& traj);

}  // namespace sgsp
