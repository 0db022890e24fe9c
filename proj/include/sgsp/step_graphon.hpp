#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sgsp/csr.hpp"

namespace sgsp {

enum class Sign { non_negative, signed_values };

/// Piecewise-constant symmetric function on [0, t)^2 over a uniform k x k
/// grid of cells of width t/k, zero outside. Values live in a sparse matrix so
/// graphons of large sparse graphs stay cheap.
///
/// Instances are immutable; every transformation returns a new value.
template <Sign S>
class BasicStepGraphon {
public:
    BasicStepGraphon() = default;
    /// `value_bound < 0` means "use the largest |value|".
    BasicStepGraphon(double support, CsrMatrix values, double value_bound = -1.0);
    /// Row-major dense k x k values.
    static BasicStepGraphon from_dense(std::size_t k, double support, std::span<const double> values,
                                       double value_bound = -1.0);

    std::size_t cells() const noexcept { return values_.dim(); }
    double support() const noexcept { return support_; }
    double cell_width() const noexcept { return cells() == 0 ? 0.0 : support_ / static_cast<double>(cells()); }
    double value_bound() const noexcept { return bound_; }
    const CsrMatrix& values() const noexcept { return values_; }
    double at(std::size_t i, std::size_t j) const noexcept { return values_.at(i, j); }

    /// Pointwise value; cells are half-open, so eval(t, y) = 0.
    double eval(double x, double y) const noexcept;

    double l1_norm() const noexcept;
    double l2_norm() const noexcept;
    /// Integral of the function itself (no absolute value).
    double integral() const noexcept;
    std::vector<double> row_sums() const;

    /// W(r x, r y): support becomes t / r, values untouched. A stretch that
    /// undoes the most recent one (r equal to 1/r_prev as computed in double)
    /// restores the earlier support bit for bit.
    BasicStepGraphon stretched(double r) const;
    /// Drops trailing all-zero rows/columns; the function on R+^2 is unchanged.
    BasicStepGraphon trimmed() const;
    /// Zero-extends to `k` cells of the same width.
    BasicStepGraphon padded(std::size_t k) const;
    /// Splits each cell into q x q equal sub-cells.
    BasicStepGraphon refined(std::size_t q) const;
    /// Midpoint sampling onto a k-cell grid over [0, support).
    BasicStepGraphon resampled(std::size_t k, double support) const;
    /// Value at (i, j) becomes old value at (perm[i], perm[j]).
    BasicStepGraphon permuted(std::span<const std::uint32_t> perm) const;

    friend bool operator==(const BasicStepGraphon& a, const BasicStepGraphon& b) {
        return a.support_ == b.support_ && a.bound_ == b.bound_ && a.values_ == b.values_;
    }

private:
    struct StretchRecord {
        double support;
        double factor;
    };

    double support_ = 0.0;
    CsrMatrix values_;
    double bound_ = 0.0;
    std::vector<StretchRecord> history_;
};

using StepGraphon = BasicStepGraphon<Sign::non_negative>;
using SignedStepGraphon = BasicStepGraphon<Sign::signed_values>;

SignedStepGraphon to_signed(const StepGraphon& w);
/// a - b on a shared grid (same cells and support).
SignedStepGraphon difference(const StepGraphon& a, const StepGraphon& b);
SignedStepGraphon difference(const SignedStepGraphon& a, const SignedStepGraphon& b);

/// Two step graphons expressed on one grid.
template <Sign S>
struct AlignedPair {
    BasicStepGraphon<S> first;
    BasicStepGraphon<S> second;
    bool exact = true;  // false when midpoint resampling was needed
};

/// Brings two step graphons onto a common grid over [0, max support).
///
/// When the cell widths have a rational ratio p/q with small terms the common
/// refinement is exact (sub-division plus zero padding). Otherwise both are
/// midpoint-resampled to `fallback_cells` cells (0 = the larger of the two
/// cell counts) and the result is flagged inexact.
template <Sign S>
AlignedPair<S> align_grids(const BasicStepGraphon<S>& a, const BasicStepGraphon<S>& b,
                           std::size_t fallback_cells = 0, std::size_t max_cells = 1u << 14);

/// Exact L1 distance between two step graphons on arbitrary grids.
template <Sign S1, Sign S2>
double l1_distance(const BasicStepGraphon<S1>& a, const BasicStepGraphon<S2>& b);

/// p/q with q <= max_den approximating x to relative tolerance, if any.
bool rational_ratio(double x, std::uint64_t max_den, std::uint64_t& p, std::uint64_t& q);

}  // namespace sgsp
