#include "sgsp/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>
#include <openssl/evp.h>

#include "sgsp/cut_metric.hpp"
#include "sgsp/edge_list.hpp"
#include "sgsp/error.hpp"
#include "sgsp/filterfit.hpp"
#include "sgsp/rng.hpp"
#include "sgsp/sampling.hpp"
#include "sgsp/spectral.hpp"

namespace sgsp {

namespace fs = std::filesystem;
using nlohmann::json;

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorKind::io, "SHA-256 computation failed");
    }
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, fmt::format("cannot read '{}'", path.string()));
    std::stringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

namespace {

// Collects output files and writes config.json and manifest.json at the end.
class Output {
public:
    explicit Output(const RunConfig& config) : config_(config), dir_(config.out_dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw Error(ErrorKind::io, fmt::format("cannot create '{}': {}", dir_.string(), ec.message()));
    }

    void write(const std::string& name, const std::string& content) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorKind::io, fmt::format("cannot write '{}'", path.string()));
        out << content;
        out.close();
        if (!out) throw Error(ErrorKind::io, fmt::format("write to '{}' failed", path.string()));
        bundle_.files.push_back({name, sha256_hex(content), content.size()});
    }

    ResultBundle finish() {
        const std::string cfg = dump_config(config_);
        write("config.json", cfg);
        bundle_.run_id = sha256_hex(cfg).substr(0, 16);
        bundle_.out_dir = dir_;
        json files = json::array();
        for (const auto& f : bundle_.files) files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
        json manifest{{"run_id", bundle_.run_id}, {"files", files}};
        const std::string text = manifest.dump(2) + "\n";
        const fs::path path = dir_ / "manifest.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error(ErrorKind::io, fmt::format("cannot write '{}'", path.string()));
        out << text;
        return bundle_;
    }

private:
    const RunConfig& config_;
    fs::path dir_;
    ResultBundle bundle_;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

EigenOptions eigen_options(const RunConfig& c) {
    EigenOptions o;
    o.tol = c.eig_tol;
    o.dense_threshold = c.dense_threshold;
    o.seed = derive_seed(c.seed, 0x656967u);
    return o;
}

template <class F>
auto in_step(const char* step, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), fmt::format("{}: {}", step, e.what()));
    }
}

}  // namespace

ResultBundle cmd_sample(const RunConfig& config) {
    Output out(config);
    const GraphonSpec w = in_step("graphon", [&] { return load_graphon_source(config.graphon); });
    const SampleGrid grid = in_step("sampling",
                                    [&] { return sample_double_sequence(w, config.t_schedule, config.n_schedule, config.seed); });

    std::string densities = "m,t,n,edges,edge_density,pair_density,limit\n";
    for (std::size_t m = 0; m < grid.cells.size(); ++m) {
        const double limit = restricted_l1_norm(w, grid.t[m]) / (grid.t[m] * grid.t[m]);
        for (std::size_t j = 0; j < grid.n.size(); ++j) {
            const auto& g = grid.cells[m][j].graph;
            std::ostringstream edges;
            write_edge_list(edges, g);
            out.write(fmt::format("edges_m{}_n{}.txt", m, grid.n[j]), edges.str());
            densities += fmt::format("{},{},{},{},{},{},{}\n", m, num(grid.t[m]), grid.n[j], g.edge_count(),
                                     num(g.edge_density()), num(pair_density(g)), num(limit));
        }
    }
    out.write("densities.csv", densities);

    SubsequenceOptions opt;
    opt.check_distance = config.check_distance;
    opt.slack = config.epsilon_m;
    opt.target_cells = config.target_cells;
    opt.max_cells = config.max_cells;
    opt.seed = derive_seed(config.seed, 0x636f6d70u);
    const auto sub = in_step("subsequence", [&] { return extract_sparse_subsequence(grid, w, opt); });
    std::string phi = "m,t,tolerance,phi\n";
    for (std::size_t m = 0; m < sub.phi.size(); ++m) {
        phi += fmt::format("{},{},{},{}\n", m, num(grid.t[m]), num(sub.tolerance[m]),
                           sub.phi[m] ? std::to_string(*sub.phi[m]) : std::string());
    }
    out.write("phi.csv", phi);
    std::string cells = "m,n,density,target_density,distance,accepted\n";
    for (const auto& c : sub.cells) {
        cells += fmt::format("{},{},{},{},{},{}\n", c.m, c.n, num(c.density), num(c.target_density),
                             std::isnan(c.distance) ? std::string() : num(c.distance), c.accepted ? 1 : 0);
    }
    out.write("subsequence.csv", cells);
    return out.finish();
}

ResultBundle cmd_spectra(const RunConfig& config) {
    Output out(config);
    const EdgeScale scale = parse_edge_scale(config.edge_scale);
    const Graph g = in_step("input", [&] { return load_graph_source(config.input); });
    const GrowthSchedule schedule{config.growth_batch, config.growth_steps, config.drop_isolated};
    const auto subs = in_step("growth", [&] { return grow_subgraphs(g, schedule, config.seed); });
    std::vector<Graph> graphs;
    for (const auto& s : subs) graphs.push_back(s.graph);
    const auto traj = in_step("trajectory", [&] { return trajectory(graphs, config.t_set, eigen_options(config)); });

    std::ostringstream csv;
    write_trajectory_csv(csv, traj, scale);
    out.write("trajectory.csv", csv.str());

    const std::size_t tail_from =
        config.tail_from < 0 ? default_tail_from(traj.size()) : static_cast<std::size_t>(config.tail_from);
    json fits = json::array();
    for (int t : config.t_set) {
        const auto reports = in_step("fit", [&] { return fit_models(traj, tail_from, t, scale); });
        for (const auto& r : reports) {
            fits.push_back({{"t", t}, {"model", std::string(to_string(r.model))}, {"slope", r.slope}, {"mse", r.mse},
                            {"points", r.points}});
        }
    }
    json report{{"edge_scale", std::string(to_string(scale))}, {"tail_from", tail_from}, {"fits", fits}};
    out.write("fits.json", report.dump(2) + "\n");

    std::string avg = "t,n_index,a,b\n";
    for (int t : {-3, -2, -1, 1, 2, 3}) {
        if (std::find(config.t_set.begin(), config.t_set.end(), t) == config.t_set.end()) continue;
        if (config.window > traj.size()) break;
        const auto a = moving_scaled_averages(traj, t, config.window);
        for (std::size_t i = 0; i < a.by_vertices.size(); ++i) {
            avg += fmt::format("{},{},{},{}\n", t, i, num(a.by_vertices[i]), num(a.by_edges[i]));
        }
    }
    out.write("averages.csv", avg);
    return out.finish();
}

ResultBundle cmd_fit_filter(const RunConfig& config) {
    Output out(config);
    const Graph g = in_step("input", [&] { return load_graph_source(config.input); });
    const DiffusionSpec spec{config.top_degree_fraction, config.filter_degree, config.filter_coefficients};
    const Diffusion d = in_step("diffusion", [&] { return synthesize_diffusion(g, spec, config.seed); });
    const auto sizes = even_sizes(g.vertex_count(), config.subgraph_count);
    const auto traj = in_step("trajectory", [&] {
        return coefficient_trajectory(g, sizes, d, config.filter_degree, derive_seed(config.seed, 0x737562u),
                                      config.drop_isolated);
    });
    const std::size_t tail_from =
        config.tail_from < 0 ? default_tail_from(traj.entries.size()) : static_cast<std::size_t>(config.tail_from);
    json errors = json::array();
    for (const auto& e : traj.entries) {
        if (!e.error.empty()) errors.push_back(e.error);
    }
    // with too few successful fits the tables are still written, ratios empty
    ConvergenceRatios ratios;
    try {
        ratios = convergence_ratios(traj, tail_from);
    } catch (const Error& e) {
        errors.push_back(fmt::format("ratios: {}", e.what()));
    }

    std::ostringstream csv, sq;
    write_coefficient_csv(csv, traj, ratios);
    write_coefficient_sqrt_csv(sq, traj);
    out.write("coefficients.csv", csv.str());
    out.write("coefficient_sqrt.csv", sq.str());

    json report{{"true_coefficients", d.coefficients},
                {"sources", d.sources.size()},
                {"tail_from", tail_from},
                {"tail_mean_classical", ratios.classical.tail_mean},
                {"tail_mean_generalized", ratios.generalized.tail_mean},
                {"exact_convergence_classical", ratios.classical.exact_convergence},
                {"exact_convergence_generalized", ratios.generalized.exact_convergence},
                {"errors", errors}};
    out.write("diffusion.json", report.dump(2) + "\n");
    return out.finish();
}

ResultBundle cmd_cutdist(const RunConfig& config) {
    Output out(config);
    const GraphonSpec a = in_step("input", [&] { return load_graphon_source(config.input); });
    const GraphonSpec b = in_step("second", [&] { return load_graphon_source(config.second); });

    AlignOptions opt;
    opt.cut.restarts = config.restarts;
    opt.cut.seed = config.seed;
    opt.refine_k = config.refine_k;
    opt.iters = config.local_iters;
    if (config.mode == "exact") {
        opt.mode = AlignMode::exact;
        opt.cut.mode = CutMode::exact;
    } else if (config.mode == "heuristic") {
        if (config.align == "degree_sort") {
            opt.mode = AlignMode::degree_sort;
        } else if (config.align == "local_search") {
            opt.mode = AlignMode::local_search;
        } else {
            throw Error(ErrorKind::invalid_argument, fmt::format("unknown align mode '{}'", config.align));
        }
    } else {
        throw Error(ErrorKind::invalid_argument, fmt::format("mode must be exact or heuristic, got '{}'", config.mode));
    }

    const auto pair = in_step("stretch", [&] { return stretched_pair(a, b, config.refine_k); });
    const auto result = in_step("alignment", [&] { return cut_distance_steps(pair.first, pair.second, opt); });
    const auto diff = difference(pair.first.permuted(result.permutation), pair.second);
    const auto cut = cut_norm(diff, opt.cut);

    json report{{"input", config.input},
                {"second", config.second},
                {"mode", config.mode},
                {"cells", pair.first.cells()},
                {"support", pair.first.support()},
                {"grid_exact", pair.exact},
                {"distance", result.distance},
                {"exact", result.exact && pair.exact},
                {"l1_difference", pair.l1_difference},
                {"permutation", result.permutation},
                {"cut", {{"value", cut.value},
                         {"exact", cut.exact},
                         {"witness_rows", cut.witness_rows},
                         {"witness_cols", cut.witness_cols}}}};
    out.write("cutdist.json", report.dump(2) + "\n");
    return out.finish();
}

}  // namespace sgsp
