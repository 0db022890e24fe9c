#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgsp/commands.hpp"
#include "sgsp/config.hpp"
#include "sgsp/error.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> mode;
    std::optional<std::string> edge_scale;
    std::optional<std::string> input;
    std::optional<std::string> second;
    std::optional<std::string> graphon;
};

sgsp::RunConfig resolve(const Overrides& o) {
    sgsp::RunConfig c = o.config_path.empty() ? sgsp::RunConfig{} : sgsp::load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out_dir = *o.out;
    if (o.mode) c.mode = *o.mode;
    if (o.edge_scale) c.edge_scale = *o.edge_scale;
    if (o.input) c.input = *o.input;
    if (o.second) c.second = *o.second;
    if (o.graphon) c.graphon = *o.graphon;
    return c;
}

void report_error(std::string_view kind, const std::string& message) {
    nlohmann::json err{{"error", std::string(kind)}, {"message", message}};
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse graphon sampling, spectra, filters and cut distances"};
    app.require_subcommand(1);
    Overrides o;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run config")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--mode", o.mode, "cut distance mode")->check(CLI::IsMember({"exact", "heuristic"}));
        sub->add_option("--edge-scale", o.edge_scale, "generalized scaling")->check(CLI::IsMember({"E", "2E"}));
    };
    auto* sample = app.add_subcommand("sample", "sample a double sequence from a graphon");
    common(sample);
    sample->add_option("--graphon", o.graphon, "graphon source");
    auto* spectra = app.add_subcommand("spectra", "eigenvalue trajectories of a growing graph");
    common(spectra);
    spectra->add_option("--input", o.input, "graph source (edge list path or clique:n:alpha)");
    auto* fit = app.add_subcommand("fit-filter", "polynomial filter regression along subgraphs");
    common(fit);
    fit->add_option("--input", o.input, "graph source");
    auto* cut = app.add_subcommand("cutdist", "stretched cut distance between two sources");
    common(cut);
    cut->add_option("--input", o.input, "first source");
    cut->add_option("--second", o.second, "second source");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report_error("usage", e.what());
        return 2;
    }

    try {
        const sgsp::RunConfig config = resolve(o);
        sgsp::ResultBundle bundle;
        if (*sample) bundle = sgsp::cmd_sample(config);
        if (*spectra) bundle = sgsp::cmd_spectra(config);
        if (*fit) bundle = sgsp::cmd_fit_filter(config);
        if (*cut) bundle = sgsp::cmd_cutdist(config);
        std::cout << bundle.run_id << " " << bundle.out_dir.string() << " (" << bundle.files.size() << " files)\n";
        return 0;
    } catch (const sgsp::Error& e) {
        report_error(sgsp::to_string(e.kind()), e.what());
    } catch (const std::exception& e) {
        report_error("internal", e.what());
    }
    return 1;
}
