#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sgsp/graph.hpp"
#include "sgsp/graphon.hpp"

namespace sgsp {

/// Every knob of a CLI run in one flat document. All fields have defaults
/// and the resolved document is written next to the outputs.
///
/// Sources (`graphon`, `input`, `second`) are either a path to an edge list
/// or one of: "celebrity", "box:<p>:<side>", "exp:<amplitude>:<decay>",
/// "clique:<n>:<alpha>" (the clique-plus-isolated-vertices graph).
struct RunConfig {
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    // sample
    std::string graphon = "celebrity";
    std::vector<double> t_schedule{1.0, 2.0, 4.0};
    std::vector<std::size_t> n_schedule{100, 200, 400};
    double epsilon_m = 0.0;
    bool check_distance = true;
    std::size_t target_cells = 128;
    std::size_t max_cells = 512;

    // spectra
    std::string input = "clique:2000:0.5";
    std::size_t growth_batch = 200;
    std::size_t growth_steps = 10;
    bool drop_isolated = true;
    std::vector<int> t_set{-5, -4, -3, -2, -1, 1, 2, 3, 4, 5};
    long tail_from = -1;  // -1: last 16%
    std::size_t window = 5;
    std::string edge_scale = "2E";
    double eig_tol = 1e-10;
    std::size_t dense_threshold = 2000;

    // fit-filter
    std::size_t filter_degree = 3;
    double top_degree_fraction = 0.10;
    std::vector<double> filter_coefficients;  // empty: drawn from the seed
    std::size_t subgraph_count = 20;

    // cutdist
    std::string second = "celebrity";
    std::string mode = "heuristic";  // exact | heuristic
    std::string align = "degree_sort";  // degree_sort | local_search (heuristic mode)
    std::size_t restarts = 16;
    std::size_t local_iters = 2;
    std::size_t refine_k = 0;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Unknown keys and ill-typed values are parse errors.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);
/// Pretty-printed JSON with every field, numbers in shortest round-trip form.
std::string dump_config(const RunConfig& config);

/// A source string resolved to a graph, when it names one.
bool source_is_graph(std::string_view source);
Graph load_graph_source(std::string_view source);
GraphonSpec load_graphon_source(std::string_view source);

}  // namespace sgsp
