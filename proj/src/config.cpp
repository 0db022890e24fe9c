#include "sgsp/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "sgsp/edge_list.hpp"
#include "sgsp/error.hpp"

namespace sgsp {

namespace {

using nlohmann::json;

// name -> (read into config, write from config)
struct Field {
    std::function<void(RunConfig&, const json&)> read;
    std::function<void(const RunConfig&, json&)> write;
};

template <class T>
Field field(const char* name, T RunConfig::*member) {
    return {[name, member](RunConfig& c, const json& j) {
                try {
                    c.*member = j.get<T>();
                } catch (const json::exception& e) {
                    throw Error(ErrorKind::parse, fmt::format("config field '{}': {}", name, e.what()));
                }
            },
            [name, member](const RunConfig& c, json& j) { j[name] = c.*member; }};
}

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table{
        {"seed", field("seed", &RunConfig::seed)},
        {"out_dir", field("out_dir", &RunConfig::out_dir)},
        {"graphon", field("graphon", &RunConfig::graphon)},
        {"t_schedule", field("t_schedule", &RunConfig::t_schedule)},
        {"n_schedule", field("n_schedule", &RunConfig::n_schedule)},
        {"epsilon_m", field("epsilon_m", &RunConfig::epsilon_m)},
        {"check_distance", field("check_distance", &RunConfig::check_distance)},
        {"target_cells", field("target_cells", &RunConfig::target_cells)},
        {"max_cells", field("max_cells", &RunConfig::max_cells)},
        {"input", field("input", &RunConfig::input)},
        {"growth_batch", field("growth_batch", &RunConfig::growth_batch)},
        {"growth_steps", field("growth_steps", &RunConfig::growth_steps)},
        {"drop_isolated", field("drop_isolated", &RunConfig::drop_isolated)},
        {"t_set", field("t_set", &RunConfig::t_set)},
        {"tail_from", field("tail_from", &RunConfig::tail_from)},
        {"window", field("window", &RunConfig::window)},
        {"edge_scale", field("edge_scale", &RunConfig::edge_scale)},
        {"eig_tol", field("eig_tol", &RunConfig::eig_tol)},
        {"dense_threshold", field("dense_threshold", &RunConfig::dense_threshold)},
        {"filter_degree", field("filter_degree", &RunConfig::filter_degree)},
        {"top_degree_fraction", field("top_degree_fraction", &RunConfig::top_degree_fraction)},
        {"filter_coefficients", field("filter_coefficients", &RunConfig::filter_coefficients)},
        {"subgraph_count", field("subgraph_count", &RunConfig::subgraph_count)},
        {"second", field("second", &RunConfig::second)},
        {"mode", field("mode", &RunConfig::mode)},
        {"align", field("align", &RunConfig::align)},
        {"restarts", field("restarts", &RunConfig::restarts)},
        {"local_iters", field("local_iters", &RunConfig::local_iters)},
        {"refine_k", field("refine_k", &RunConfig::refine_k)},
    };
    return table;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <class T>
T number(std::string_view text, std::string_view source) {
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::parse, fmt::format("bad number '{}' in source '{}'", text, source));
    }
    return v;
}

std::string_view family(std::string_view source) { return source.substr(0, source.find(':')); }

}  // namespace

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::parse, fmt::format("config is not valid JSON: {}", e.what()));
    }
    if (!doc.is_object()) throw Error(ErrorKind::parse, "config must be a JSON object");
    RunConfig c;
    for (const auto& [key, value] : doc.items()) {
        auto it = fields().find(key);
        if (it == fields().end()) throw Error(ErrorKind::parse, fmt::format("unknown config field '{}'", key));
        it->second.read(c, value);
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, fmt::format("cannot open config '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const Error& e) {
        throw Error(e.kind(), fmt::format("{}: {}", path, e.what()));
    }
}

std::string dump_config(const RunConfig& config) {
    json doc = json::object();
    for (const auto& [name, f] : fields()) f.write(config, doc);
    return doc.dump(2) + "\n";
}

bool source_is_graph(std::string_view source) {
    const auto fam = family(source);
    return fam == "clique" || (fam != "celebrity" && fam != "box" && fam != "exp");
}

Graph load_graph_source(std::string_view source) {
    if (family(source) == "clique") {
        auto parts = split(source, ':');
        if (parts.size() != 3) throw Error(ErrorKind::parse, fmt::format("expected clique:<n>:<alpha>, got '{}'", source));
        return celebrity_graph(number<std::size_t>(parts[1], source), number<double>(parts[2], source));
    }
    if (!source_is_graph(source)) {
        throw Error(ErrorKind::invalid_argument, fmt::format("source '{}' is a graphon, not a graph", source));
    }
    return read_edge_list(std::string(source));
}

GraphonSpec load_graphon_source(std::string_view source) {
    const auto fam = family(source);
    auto parts = split(source, ':');
    if (fam == "celebrity") {
        if (parts.size() != 1) throw Error(ErrorKind::parse, "celebrity takes no parameters");
        return CelebrityLimit{};
    }
    if (fam == "box" || fam == "exp") {
        if (parts.size() != 3) {
            throw Error(ErrorKind::parse, fmt::format("expected {}:<a>:<b>, got '{}'", fam, source));
        }
        const double a = number<double>(parts[1], source), b = number<double>(parts[2], source);
        if (fam == "box") return ConstantBox{a, b};
        return RankOneExp{a, b};
    }
    return canonical_graphon(load_graph_source(source));
}

}  // namespace sgsp
