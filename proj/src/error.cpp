#include "sgsp/error.hpp"

namespace sgsp {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid_argument";
        case ErrorKind::empty_graph: return "empty_graph";
        case ErrorKind::isolated_vertex: return "isolated_vertex";
        case ErrorKind::zero_graphon: return "zero_graphon";
        case ErrorKind::resolution_too_large: return "resolution_too_large";
        case ErrorKind::incompatible_grid: return "incompatible_grid";
        case ErrorKind::probability_range: return "probability_range";
        case ErrorKind::unsorted_points: return "unsorted_points";
        case ErrorKind::no_convergence: return "no_convergence";
        case ErrorKind::rank_deficient: return "rank_deficient";
        case ErrorKind::zero_design: return "zero_design";
        case ErrorKind::schedule_too_large: return "schedule_too_large";
        case ErrorKind::io: return "io";
        case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

}  // namespace sgsp
