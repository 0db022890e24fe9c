#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sgsp/graphon.hpp"
#include "sgsp/step_graphon.hpp"

namespace sgsp {

enum class CutMode { exact, heuristic };

struct CutOptions {
    CutMode mode = CutMode::heuristic;
    std::size_t restarts = 16;
    std::uint64_t seed = 0;
};

// Largest cell count the exact enumeration accepts.
inline constexpr std::size_t exact_cut_limit = 22;

struct CutResult {
    double value = 0.0;
    std::vector<std::uint32_t> witness_rows;
    std::vector<std::uint32_t> witness_cols;
    bool exact = false;
};

/// |sum over rows x cols of the cell values| times the cell area.
///
/// Terms are sorted before summation, so the result depends only on the two
/// index sets and not on how they were found.
double cut_objective(const SignedStepGraphon& w, std::span<const std::uint32_t> rows,
                     std::span<const std::uint32_t> cols);

CutResult cut_norm(const SignedStepGraphon& w, const CutOptions& options = {});

enum class AlignMode { exact, degree_sort, local_search };

// Largest cell count for which all permutations are tried.
inline constexpr std::size_t exact_align_limit = 8;

struct AlignOptions {
    AlignMode mode = AlignMode::degree_sort;
    std::size_t iters = 2;   // local_search passes
    CutOptions cut{};        // cut norm used for each candidate alignment
    bool refine = true;      // bring mismatched grids onto a common one
    std::size_t refine_k = 0;  // fallback resolution; 0 = larger of the two
};

struct AlignmentResult {
    double distance = 0.0;
    // w1 is compared as w1.permuted(permutation).
    std::vector<std::uint32_t> permutation;
    bool exact = false;
};

/// min over cell relabelings of || w1^pi - w2 ||_cut, restricted according to
/// `options.mode`. Never exceeds the identity alignment.
AlignmentResult cut_distance_steps(const StepGraphon& w1, const StepGraphon& w2, const AlignOptions& options = {});

/// Both graphons stretched to unit 1-norm and put on one grid.
struct StretchedPair {
    StepGraphon first;
    StepGraphon second;
    bool exact = true;  // false after truncation or midpoint resampling
    // ||first - second||_1 of the stretched forms before any resampling
    double l1_difference = 0.0;
};

/// Exponential kernels are truncated where their tail mass is below 1e-6 and
/// sampled on `refine_k` cells (512 when 0).
StretchedPair stretched_pair(const GraphonSpec& w1, const GraphonSpec& w2, std::size_t refine_k = 0);

/// Stretches both graphons to unit 1-norm, puts them on a common grid and
/// compares them with cut_distance_steps.
AlignmentResult stretched_cut_distance(const GraphonSpec& w1, const GraphonSpec& w2,
                                       const AlignOptions& options = {});

}  // namespace sgsp
