#pragma once

#include <cstdint>
#include <vector>

#include "sgsp/csr.hpp"
#include "sgsp/graph.hpp"

namespace sgsp {

struct EigenOptions {
    double tol = 1e-10;  // residual relative to the norm estimate
    std::size_t dense_threshold = 2000;
    std::size_t max_restarts = 500;
    bool want_vectors = false;
    std::uint64_t seed = 0x5eed;
};

/// Extreme eigenpairs of a symmetric matrix.
///
/// `positive` holds the k_pos largest eigenvalues in decreasing order and
/// `negative` the k_neg smallest in increasing order. Labels follow the
/// convention of a kernel operator with an infinite null space: a "positive"
/// slot that the matrix cannot fill reads 0 (and likewise for negatives).
/// `raw_*` keep the unclamped values, which is what residuals refer to.
struct EigenReport {
    std::vector<double> positive;
    std::vector<double> negative;
    std::vector<double> raw_positive;
    std::vector<double> raw_negative;
    std::vector<double> residual_positive;
    std::vector<double> residual_negative;
    std::vector<std::vector<double>> positive_vectors;  // filled when asked
    std::vector<std::vector<double>> negative_vectors;
    double norm_estimate = 0.0;
    bool dense = false;
};

EigenReport eigensolve(const CsrMatrix& a, std::size_t k_pos, std::size_t k_neg, const EigenOptions& options = {});
EigenReport eigensolve(const Graph& g, std::size_t k_pos, std::size_t k_neg, const EigenOptions& options = {});

}  // namespace sgsp
