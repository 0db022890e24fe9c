#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sgsp/graph.hpp"

namespace sgsp {

// Edge-list text format:
//   - one edge per line: two whitespace-separated 0-based vertex ids
//   - lines starting with '#' and blank lines are ignored
//   - optional header line "n <count>" fixes the vertex count; otherwise it is
//     max id + 1
//   - reversed and repeated edges collapse to one
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);
Graph parse_edge_list(const std::string& text);

/// Writes the "n <count>" header followed by the sorted edges.
void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace sgsp
