#include "sgsp/edge_list.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "sgsp/error.hpp"

namespace sgsp {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint64_t parse_id(std::string_view token, std::size_t line_no) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value > 0xFFFFFFFEull) {
        throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": invalid vertex id '" +
                                          std::string(token) + "'");
    }
    return value;
}

}  // namespace

Graph read_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    std::uint64_t max_id = 0;
    bool any = false;
    bool have_header = false;
    std::uint64_t header_n = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#') continue;
        if (tokens[0] == "n") {
            if (tokens.size() != 2 || have_header) {
                throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": malformed header");
            }
            header_n = parse_id(tokens[1], line_no);
            have_header = true;
            continue;
        }
        if (tokens.size() != 2) {
            throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": expected two vertex ids");
        }
        auto a = parse_id(tokens[0], line_no);
        auto b = parse_id(tokens[1], line_no);
        if (a == b) {
            throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": self-loop");
        }
        max_id = std::max({max_id, a, b});
        any = true;
        edges.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    }
    std::size_t n = any ? static_cast<std::size_t>(max_id + 1) : 0;
    if (have_header) {
        if (any && header_n <= max_id) {
            throw Error(ErrorKind::parse, "header vertex count " + std::to_string(header_n) +
                                              " does not cover id " + std::to_string(max_id));
        }
        n = static_cast<std::size_t>(header_n);
    }
    return Graph(n, std::move(edges));
}

Graph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open edge list '" + path.string() + "'");
    try {
        return read_edge_list(in);
    } catch (const Error& e) {
        throw Error(e.kind(), path.string() + ": " + e.what());
    }
}

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "n " << g.vertex_count() << '\n';
    for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::io, "cannot write edge list '" + path.string() + "'");
    write_edge_list(out, g);
    if (!out) throw Error(ErrorKind::io, "write failed for '" + path.string() + "'");
}

}  // namespace sgsp
