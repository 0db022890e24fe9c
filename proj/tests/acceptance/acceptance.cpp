// Acceptance checks. Each criterion prints one PASS/FAIL line; every
// tolerance and budget is pinned below. Pass criterion numbers as arguments
// to run a subset.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <json.hpp>

#include "oracles.hpp"
#include "sgsp/cut_metric.hpp"
#include "sgsp/edge_list.hpp"
#include "sgsp/filterfit.hpp"
#include "sgsp/graphon.hpp"
#include "sgsp/operators.hpp"
#include "sgsp/rng.hpp"
#include "sgsp/sampling.hpp"
#include "sgsp/spectral.hpp"

using namespace sgsp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// 1. stretched clique graphs against the unit square
Outcome clique_limit() {
    constexpr double equality_tol = 1e-10;
    constexpr double bound_at_largest = 1e-3;
    bool literal = true, oracle_ok = true, cut_ok = true;
    std::string detail;
    double last_bound = 0.0;
    for (std::size_t n : {400u, 1600u, 6400u, 25600u}) {
        const std::size_t k = celebrity_core_size(n, 0.5);
        const double bound = 2.0 / static_cast<double>(k - 1);
        const GraphonSpec graph(canonical_graphon(celebrity_graph(n, 0.5)));
        const GraphonSpec unit(CelebrityLimit{});
        const auto pair = stretched_pair(graph, unit);
        const double exact_gap = static_cast<double>(oracle::clique_vs_unit_square_l1(k));
        const double dist = stretched_cut_distance(graph, unit).distance;
        literal &= std::abs(pair.l1_difference - bound) <= equality_tol;
        oracle_ok &= std::abs(pair.l1_difference - exact_gap) <= 1e-12;
        cut_ok &= dist <= bound;
        detail += fmt::format(" n={} k={} l1={:.6e} 2/(k-1)={:.6e} cut={:.3e};", n, k, pair.l1_difference, bound, dist);
        last_bound = bound;
    }
    const bool small = last_bound <= bound_at_largest;
    return {literal && oracle_ok && cut_ok && small,
            fmt::format(" l1==2/(k-1) to 1e-10: {}; l1==exact area form: {}; cut<=bound: {}; bound(25600)<=1e-3: {};{}",
                        literal, oracle_ok, cut_ok, small, detail)};
}

// 2. pair densities of a full unit box against 1/t^2
Outcome box_densities() {
    const GraphonSpec w(ConstantBox{1.0, 1.0});
    const std::vector<double> ts{1.0, 2.0, 4.0};
    const std::vector<std::size_t> ns{2000};
    constexpr int seeds = 20;
    std::vector<std::vector<double>> dens(ts.size());
    for (int s = 1; s <= seeds; ++s) {
        auto grid = sample_double_sequence(w, ts, ns, static_cast<std::uint64_t>(s));
        for (std::size_t m = 0; m < ts.size(); ++m) dens[m].push_back(pair_density(grid.cells[m][0].graph));
    }
    bool ok = true;
    std::string detail;
    double prev = 2.0;
    const double pairs = 2000.0 * 1999.0 / 2.0;
    for (std::size_t m = 0; m < ts.size(); ++m) {
        const double limit = 1.0 / (ts[m] * ts[m]);
        double mean_edges = 0.0;
        const double sd = oracle::box_edge_sd(2000, 1.0, 1.0, ts[m], mean_edges) / pairs / std::sqrt(double(seeds));
        const double mean = mean_of(dens[m]);
        const bool within = std::abs(mean - limit) <= 3.0 * sd;
        ok &= within && mean < prev;
        prev = mean;
        detail += fmt::format(" t={} mean={:.6f} limit={:.6f} sigma={:.2e};", ts[m], mean, limit, sd);
    }
    return {ok, detail};
}

double mean_scaled_top(const GraphonSpec& w, double t, std::size_t n, int seeds, std::size_t dense_threshold) {
    EigenOptions opt;
    opt.dense_threshold = dense_threshold;
    const std::vector<int> ts{1};
    std::vector<double> v;
    for (int s = 1; s <= seeds; ++s) {
        const auto g = sample_graph(w, t, n, static_cast<std::uint64_t>(s)).graph;
        v.push_back(scaled_spectrum(g, ts, opt).at(1));
    }
    return mean_of(v);
}

// 3. rank-one exponential kernel: lambda_1 / sqrt(2|E|) -> ||g||_2^2 / ||g||_1 = 0.5
Outcome rank_one_spectrum() {
    const double mean = mean_scaled_top(GraphonSpec(RankOneExp{1.0, 1.0}), 8.0, 4000, 20, 0);
    return {std::abs(mean - 0.5) <= 0.1, fmt::format(" mean={:.6f} target=0.5 tol=0.1 (Lanczos)", mean)};
}

// 4. Erdos-Renyi box: lambda_1 / sqrt(2|E|) -> sqrt(p) = 0.5
Outcome er_spectrum() {
    const double mean = mean_scaled_top(GraphonSpec(ConstantBox{0.25, 1.0}), 1.0, 3000, 10, 2000);
    return {std::abs(mean - 0.5) <= 0.05, fmt::format(" mean={:.6f} target=0.5 tol=0.05", mean)};
}

// 5. the generalized scaling fits clique growth best
Outcome growth_fits() {
    const Graph g = celebrity_graph(2000, 0.5);
    constexpr int seeds = 50;
    const GrowthSchedule schedule{100, 20, false};
    const std::vector<int> ts{1};
    int wins = 0;
    for (int s = 1; s <= seeds; ++s) {
        std::vector<Graph> graphs;
        for (auto& sub : grow_subgraphs(g, schedule, static_cast<std::uint64_t>(s))) graphs.push_back(std::move(sub.graph));
        const auto traj = trajectory(graphs, ts);
        const auto fits = fit_models(traj, default_tail_from(traj.size()), 1);
        wins += fits[0].mse < fits[1].mse && fits[0].mse < fits[2].mse;
    }
    return {wins * 10 >= seeds * 9, fmt::format(" generalized best in {}/{} seeds (need 90%)", wins, seeds)};
}

// 6. exact cut norm against brute force; heuristic quality at k = 12
Outcome cut_oracle() {
    std::mt19937_64 rng(606);
    int identical = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = 1 + static_cast<std::size_t>(trial % 10);
        auto w = oracle::random_signed(k, rng, 0.5 + 0.01 * trial);
        const double brute = oracle::brute_force_cut(w.values().to_dense(), k, w.cell_width());
        identical += cut_norm(w, {CutMode::exact, 0, 0}).value == brute;
    }
    int good = 0;
    constexpr int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        auto w = oracle::random_signed(12, rng);
        const double exact = cut_norm(w, {CutMode::exact, 0, 0}).value;
        const double heur = cut_norm(w, {CutMode::heuristic, 64, static_cast<std::uint64_t>(trial)}).value;
        good += heur >= 0.95 * exact;
    }
    return {identical == 200 && good * 100 >= trials * 95,
            fmt::format(" bit-identical {}/200; heuristic >= 0.95 exact in {}/{}", identical, good, trials)};
}

// 7. ||T f||_2 <= (||W||_2 / ||W||_1) ||f||_2 on random generalized step
// graphons. Supports up to 3 make ||W||_1 > 1 possible, where the ratio falls
// below the Hilbert-Schmidt norm ||W||_2 / sqrt(||W||_1) of the stretched
// kernel; both are checked and the violations are reported by regime.
Outcome operator_bound() {
    std::mt19937_64 rng(707);
    std::uniform_int_distribution<std::size_t> cells(1, 40);
    std::uniform_real_distribution<double> sup(0.3, 3.0), u(-1.0, 1.0);
    double worst = std::numeric_limits<double>::infinity(), worst_hs = worst;
    int pairs = 0, violations = 0, violations_small = 0, heavy = 0;
    while (pairs < 500) {
        const std::size_t k = cells(rng);
        const auto d = oracle::random_symmetric(k, rng, 0.0, 1.0, 0.3);
        const double support = sup(rng);
        const auto w = StepGraphon::from_dense(k, support, d);
        if (!(w.l1_norm() > 0.0)) continue;
        ++pairs;
        // norms of W by plain sums
        const double area = (support / k) * (support / k);
        double l1 = 0.0, l2sq = 0.0;
        for (double x : d) {
            l1 += x * area;
            l2sq += x * x * area;
        }
        const double ratio = std::sqrt(l2sq) / l1;
        const double hs = std::sqrt(l2sq / l1);
        const GraphonOperator op{GraphonSpec(w)};
        const auto& ks = op.kernel();
        std::vector<double> f(k);
        for (auto& x : f) x = u(rng);
        const double h = ks.cell_width();
        double tf2 = 0.0, f2 = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < k; ++j) s += ks.at(i, j) * f[j] * h;
            tf2 += s * s * h;
            f2 += f[i] * f[i] * h;
        }
        // the library operator agrees with the plain product
        const double tf = std::max(std::sqrt(tf2), op.apply(StepSignal(ks.support(), f)).l2_norm());
        const double slack = ratio * std::sqrt(f2) - tf;
        worst = std::min(worst, slack);
        worst_hs = std::min(worst_hs, hs * std::sqrt(f2) - tf);
        heavy += l1 > 1.0;
        if (slack < -1e-10) {
            ++violations;
            violations_small += l1 <= 1.0;
        }
    }
    return {worst >= -1e-10,
            fmt::format(" smallest slack {:.3e} (need >= -1e-10); {} of {} pairs violate, {} of them with ||W||_1 <= 1 "
                        "({} pairs have ||W||_1 > 1); Hilbert-Schmidt bound smallest slack {:.3e}",
                        worst, violations, pairs, violations_small, heavy, worst_hs)};
}

// 8. spectral route against Chebyshev route
Outcome two_route_filters() {
    std::mt19937_64 rng(808);
    const auto w = oracle::random_step(128, rng, 1.0, 0.5);
    const GraphonSpec spec(w);
    const GraphonOperator op(spec);
    const auto h = SpectralFilter::for_graphon([](double x) { return std::exp(2.0 * x) / (1.0 + x * x); }, spec);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(128);
        for (auto& x : v) x = u(rng);
        const StepSignal f(op.support(), v);
        const auto spectral = apply_spectral(h, op, f, 128);
        const auto cheb = apply_chebyshev(h, op, f);
        worst = std::max(worst, l2_distance(spectral.value, cheb) / spectral.value.l2_norm());
    }
    return {worst <= 1e-6, fmt::format(" worst relative l2 gap {:.3e} (need <= 1e-6)", worst)};
}

// 9. noiseless filter recovery under both scalings
Outcome filter_recovery() {
    const Graph g = sample_graph(GraphonSpec(ConstantBox{0.05, 1.0}), 1.0, 500, 909).graph;
    const Diffusion d = synthesize_diffusion(g, DiffusionSpec{}, 909);
    double coef_err = 0.0;
    std::vector<std::vector<double>> predictions;
    for (auto scaling : {Scaling::classical, Scaling::generalized}) {
        const auto fit = fit_filter(d.input, d.output, g, 3, scaling);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double c = fit.filter.coefficients[i] * std::pow(fit.scale, static_cast<double>(i));
            num += (c - d.coefficients[i]) * (c - d.coefficients[i]);
            den += d.coefficients[i] * d.coefficients[i];
        }
        coef_err = std::max(coef_err, std::sqrt(num / den));
        predictions.push_back(apply_graph_filter(g.adjacency(), fit.filter.coefficients, d.input, fit.scale));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < predictions[0].size(); ++i) {
        num += (predictions[0][i] - predictions[1][i]) * (predictions[0][i] - predictions[1][i]);
        den += predictions[0][i] * predictions[0][i];
    }
    const double pred_err = std::sqrt(num / den);
    return {coef_err <= 1e-8 && pred_err <= 1e-8,
            fmt::format(" coefficient rel err {:.3e}; prediction gap {:.3e} (need <= 1e-8)", coef_err, pred_err)};
}

// 10. stretched sampled signals approach the stretched signal
Outcome signal_convergence() {
    const GraphonSpec w(RankOneExp{1.0, 1.0});  // unit 1-norm, so f^s = f
    const SignalProfile f = ExpProfile{1.0, 1.0};
    const std::vector<std::size_t> ns{500, 1000, 2000, 4000, 8000};
    constexpr int seeds = 20;
    int decreasing = 0, monotone = 0;
    for (int s = 1; s <= seeds; ++s) {
        std::vector<double> err;
        for (std::size_t n : ns) {
            const auto sampled = sample_graph(w, 8.0, n, derive_seed(static_cast<std::uint64_t>(s), n));
            const double r = std::sqrt(2.0 * static_cast<double>(sampled.graph.edge_count())) / static_cast<double>(n);
            const StepSignal fs = sample_signal(f, sampled.points).stretched(r);
            err.push_back(l1_distance(fs, f));
        }
        // least squares slope of log error against log n
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const double x = std::log(double(ns[i])), y = std::log(err[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double m = static_cast<double>(ns.size());
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        decreasing += err.back() < err.front() && slope < 0.0;
        monotone += std::is_sorted(err.rbegin(), err.rend());
    }
    return {decreasing * 10 >= seeds * 9,
            fmt::format(" error(8000) < error(500) with falling trend in {}/{} seeds (need 90%); every doubling in {}/{}",
                        decreasing, seeds, monotone, seeds)};
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        files[std::filesystem::relative(e.path(), dir).string()] = ss.str();
    }
    return files;
}

// 11. CLI reruns are byte-identical
Outcome cli_determinism() {
    const auto root = oracle::temp_dir("acceptance_cli");
    const auto graph_path = root / "graph.txt";
    write_edge_list(graph_path, sample_graph(GraphonSpec(ConstantBox{0.05, 1.0}), 1.0, 600, 11).graph);
    struct Run {
        std::string command;
        nlohmann::json config;
    };
    const std::vector<Run> runs{
        {"sample", {{"graphon", "box:0.8:1"}, {"t_schedule", {1.0, 2.0}}, {"n_schedule", {50, 100}},
                    {"target_cells", 32}, {"max_cells", 128}}},
        {"spectra", {{"input", "clique:1000:0.5"}, {"growth_batch", 100}, {"growth_steps", 10}, {"t_set", {-2, -1, 1, 2}}}},
        {"fit-filter", {{"input", graph_path.string()}, {"subgraph_count", 10}}},
        {"cutdist", {{"input", "clique:400:0.5"}, {"second", "celebrity"}}},
    };
    bool ok = true;
    std::string detail;
    for (const auto& run : runs) {
        const auto out = root / run.command;
        auto cfg = run.config;
        cfg["out_dir"] = out.string();
        cfg["seed"] = 11;
        const auto cfg_path = root / (run.command + ".json");
        std::ofstream(cfg_path) << cfg.dump();
        const std::string cmd =
            fmt::format("{} {} --config {} > /dev/null", SGSP_CLI_PATH, run.command, cfg_path.string());
        const int first_status = std::system(cmd.c_str());
        const auto first = snapshot(out);
        std::filesystem::remove_all(out);
        const int second_status = std::system(cmd.c_str());
        const auto second = snapshot(out);
        const bool same = first_status == 0 && second_status == 0 && first.size() > 2 && first == second;
        ok &= same;
        detail += fmt::format(" {}: {} files {};", run.command, first.size(), same ? "identical" : "DIFFER");
    }
    return {ok, detail};
}

struct Criterion {
    int id;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, 30, clique_limit},       {2, 60, box_densities},      {3, 300, rank_one_spectrum},
        {4, 180, er_spectrum},       {5, 600, growth_fits},       {6, 120, cut_oracle},
        {7, 60, operator_bound},     {8, 60, two_route_filters},  {9, 30, filter_recovery},
        {10, 120, signal_convergence}, {11, 300, cli_determinism},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, fmt::format(" threw: {}", e.what())};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.budget_seconds;
        const bool pass = o.pass && in_time;
        failures += !pass;
        std::cout << fmt::format("criterion {:>2}: {} [{:.1f}s / {:.0f}s]{}", c.id, pass ? "PASS" : "FAIL", secs,
                                 c.budget_seconds, o.detail)
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
