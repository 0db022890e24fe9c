#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgsp {

enum class ErrorKind {
    invalid_argument,
    empty_graph,
    isolated_vertex,
    zero_graphon,
    resolution_too_large,
    incompatible_grid,
    probability_range,
    unsorted_points,
    no_convergence,
    rank_deficient,
    zero_design,
    schedule_too_large,
    io,
    parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; `kind` is what the CLI reports.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace sgsp
