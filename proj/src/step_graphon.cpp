#include "sgsp/step_graphon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sgsp/detail/summation.hpp"
#include "sgsp/error.hpp"

namespace sgsp {

template <Sign S>
BasicStepGraphon<S>::BasicStepGraphon(double support, CsrMatrix values, double value_bound)
    : support_(support), values_(std::move(values)) {
    if (!(support_ >= 0.0) || !std::isfinite(support_)) {
        throw Error(ErrorKind::invalid_argument, "step graphon support must be finite and non-negative");
    }
    double largest = 0.0;
    for (double v : values_.values()) {
        if (!std::isfinite(v)) throw Error(ErrorKind::invalid_argument, "step graphon value is not finite");
        if constexpr (S == Sign::non_negative) {
            if (v < 0.0) throw Error(ErrorKind::invalid_argument, "step graphon value is negative");
        }
        largest = std::max(largest, std::abs(v));
    }
    if (!values_.is_symmetric()) {
        throw Error(ErrorKind::invalid_argument, "step graphon values are not symmetric");
    }
    if (value_bound < 0.0) {
        bound_ = largest;
    } else {
        if (largest > value_bound) {
            throw Error(ErrorKind::invalid_argument, "step graphon value exceeds its bound");
        }
        bound_ = value_bound;
    }
}

template <Sign S>
BasicStepGraphon<S> BasicStepGraphon<S>::from_dense(std::size_t k, double support, std::span<const double> values,
                                                    double value_bound) {
    return BasicStepGraphon(support, CsrMatrix::from_dense(k, values), value_bound);
}

template <Sign S>
double BasicStepGraphon<S>::eval(double x, double y) const noexcept {
    if (!(x >= 0.0 && y >= 0.0 && x < support_ && y < support_)) return 0.0;
    const double w = cell_width();
    auto i = std::min(static_cast<std::size_t>(x / w), cells() - 1);
    auto j = std::min(static_cast<std::size_t>(y / w), cells() - 1);
    return values_.at(i, j);
}

template <Sign S>
double BasicStepGraphon<S>::l1_norm() const noexcept {
    double sum = 0.0;
    for (double v : values_.values()) sum += std::abs(v);
    const double w = cell_width();
    return w * w * sum;
}

template <Sign S>
double BasicStepGraphon<S>::l2_norm() const noexcept {
    double sum = 0.0;
    for (double v : values_.values()) sum += v * v;
    return cell_width() * std::sqrt(sum);
}

template <Sign S>
double BasicStepGraphon<S>::integral() const noexcept {
    double sum = 0.0;
    for (double v : values_.values()) sum += v;
    const double w = cell_width();
    return w * w * sum;
}

template <Sign S>
std::vector<double> BasicStepGraphon<S>::row_sums() const {
    std::vector<double> sums(cells(), 0.0);
    for (std::size_t i = 0; i < cells(); ++i) {
        for (double v : values_.row_values(i)) sums[i] += v;
    }
    return sums;
}

template <Sign S>
BasicStepGraphon<S> BasicStepGraphon<S>::stretched(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_argument, "stretch factor must be positive");
    BasicStepGraphon out = *this;
    if (!history_.empty()) {
        const auto& last = history_.back();
        if (r == 1.0 / last.factor || last.factor == 1.0 / r) {
            out.support_ = last.support;
            out.history_.pop_back();
            return out;
        }
    }
    out.history_.push_back({support_, r});
    out.support_ = support_ / r;
    return out;
}

template <Sign S>
BasicStepGraphon<S> BasicStepGraphon<S>::trimmed() const {
    std::size_t last = 0;
    for (std::size_t i = 0; i < cells(); ++i) {
        if (!values_.row_cols(i).empty()) last = i + 1;
    }
    if (last == cells()) return *this;
    BasicStepGraphon out;
    out.values_ = values_.leading(last);
    out.support_ = cell_width() * static_cast<double>(last);
    out.bound_ = bound_;
    return out;
}

template <Sign S>
BasicStepGraphon<S> BasicStepGraphon<S>::padded(std::size_t k) const {
    if (k < cells()) throw Error(ErrorKind::invalid_argument, "padding cannot shrink a step graphon");
    if (k == cells()) return *this;
    BasicStepGraphon out;
    out.support_ = cell_width() * static_cast<double>(k);
    out.values_ = values_.padded(k);
    out.bound_ = bound_;
    return out;
}

template <Sign S>
BasicStepGraphon<S> BasicStepGraphon<S>::refined(std::size_t q) const {
    if (q == 0) throw Error(ErrorKind::invalid_argument, "refinement factor must be positive");
    if (q == 1) return *this;
    std::vector<CsrMatrix::Entry> entries;
    entries.reserve(values_.nnz() * q * q);
    for (std::size_t i = 0; i < cells(); ++i) {
        auto cols = values_.row_cols(i);
        auto vals = values_.row_values(i);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t b = 0; b < q; ++b)
                    entries.push_back({static_cast<std::uint32_t>(i * q + a),
                                       static_cast<std::uint32_t>(cols[p] * q + b), vals[p]});
        }
    }
    BasicStepGraphon out;
    out.support_ = support_;
    out.values_ = CsrMatrix::from_triplets(cells() * q, std::move(entries));
    out.bound_ = bound_;
    return out;
}

template <Sign S>
BasicStepGraphon<S> BasicStepGraphon<S>::resampled(std::size_t k, double support) const {
    if (k == 0) throw Error(ErrorKind::invalid_argument, "resampling needs at least one cell");
    const double new_w = support / static_cast<double>(k);
    const double w = cell_width();
    // source[I] = old cell containing the midpoint of new cell I, or npos.
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> source(k, npos);
    for (std::size_t I = 0; I < k; ++I) {
        double mid = (static_cast<double>(I) + 0.5) * new_w;
        if (mid < support_ && cells() > 0) source[I] = std::min(static_cast<std::size_t>(mid / w), cells() - 1);
    }
    // first[j] .. first[j + 1] is the range of new cells fed by old cell j.
    // new cells past the old support come last and are fed by nothing
    const auto fed = static_cast<std::size_t>(std::count_if(source.begin(), source.end(),
                                                            [](std::size_t s) { return s != npos; }));
    std::vector<std::size_t> first(cells() + 1, fed);
    for (std::size_t I = k; I-- > 0;) {
        if (source[I] != npos) first[source[I]] = I;
    }
    for (std::size_t j = cells(); j-- > 0;) {
        if (first[j] == fed || first[j] > first[j + 1]) first[j] = first[j + 1];
    }
    std::vector<CsrMatrix::Entry> entries;
    for (std::size_t I = 0; I < k; ++I) {
        if (source[I] == npos) continue;
        auto cols = values_.row_cols(source[I]);
        auto vals = values_.row_values(source[I]);
        for (std::size_t p = 0; p < cols.size(); ++p) {
            for (std::size_t J = first[cols[p]]; J < first[cols[p] + 1]; ++J) {
                entries.push_back({static_cast<std::uint32_t>(I), static_cast<std::uint32_t>(J), vals[p]});
            }
        }
    }
    BasicStepGraphon out;
    out.support_ = support;
    out.values_ = CsrMatrix::from_triplets(k, std::move(entries));
    out.bound_ = bound_;
    return out;
}

template <Sign S>
BasicStepGraphon<S> BasicStepGraphon<S>::permuted(std::span<const std::uint32_t> perm) const {
    if (perm.size() != cells()) throw Error(ErrorKind::invalid_argument, "permutation size mismatch");
    BasicStepGraphon out = *this;
    out.values_ = values_.permuted(perm);
    return out;
}

template class BasicStepGraphon<Sign::non_negative>;
template class BasicStepGraphon<Sign::signed_values>;

SignedStepGraphon to_signed(const StepGraphon& w) {
    return SignedStepGraphon(w.support(), w.values(), w.value_bound());
}

namespace {

template <Sign S>
SignedStepGraphon difference_impl(const BasicStepGraphon<S>& a, const BasicStepGraphon<S>& b) {
    if (a.cells() != b.cells() || a.support() != b.support()) {
        throw Error(ErrorKind::incompatible_grid, "difference needs identical grids (" + std::to_string(a.cells()) +
                                                      " vs " + std::to_string(b.cells()) + " cells)");
    }
    return SignedStepGraphon(a.support(), a.values().combine(1.0, b.values(), -1.0),
                             a.value_bound() + b.value_bound());
}

}  // namespace

SignedStepGraphon difference(const StepGraphon& a, const StepGraphon& b) { return difference_impl(a, b); }
SignedStepGraphon difference(const SignedStepGraphon& a, const SignedStepGraphon& b) { return difference_impl(a, b); }

bool rational_ratio(double x, std::uint64_t max_den, std::uint64_t& p, std::uint64_t& q) {
    if (!(x > 0.0) || !std::isfinite(x)) return false;
    // Continued-fraction convergents h/k.
    double rest = x;
    std::uint64_t h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    for (int iter = 0; iter < 64; ++iter) {
        double a = std::floor(rest);
        if (a > 1e15) return false;
        auto ai = static_cast<std::uint64_t>(a);
        std::uint64_t h2 = ai * h0 + h1, k2 = ai * k0 + k1;
        if (k2 > max_den || h2 > max_den) return false;
        h1 = h0; h0 = h2; k1 = k0; k0 = k2;
        double approx = static_cast<double>(h0) / static_cast<double>(k0);
        if (std::abs(approx - x) <= 1e-12 * x) {
            p = h0;
            q = k0;
            return true;
        }
        double frac = rest - a;
        if (frac <= 0.0) return false;
        rest = 1.0 / frac;
    }
    return false;
}

template <Sign S>
AlignedPair<S> align_grids(const BasicStepGraphon<S>& a, const BasicStepGraphon<S>& b, std::size_t fallback_cells,
                           std::size_t max_cells) {
    if (a.cells() == 0 || b.cells() == 0) throw Error(ErrorKind::invalid_argument, "cannot align an empty grid");
    if (a.cells() == b.cells() && a.support() == b.support()) return {a, b, true};
    std::uint64_t p = 0, q = 0;
    if (rational_ratio(a.cell_width() / b.cell_width(), 1024, p, q)) {
        // width_a = p * w and width_b = q * w for the common width w.
        std::size_t ka = a.cells() * p, kb = b.cells() * q;
        std::size_t k = std::max(ka, kb);
        if (k <= max_cells) {
            auto ra = a.refined(p).padded(k);
            auto rb = b.refined(q).padded(k);
            // the two supports can differ in the last bits; pin both to one
            const double t = std::max(ra.support(), rb.support());
            if (ra.support() != t) ra = BasicStepGraphon<S>(t, ra.values(), ra.value_bound());
            if (rb.support() != t) rb = BasicStepGraphon<S>(t, rb.values(), rb.value_bound());
            return {std::move(ra), std::move(rb), true};
        }
    }
    std::size_t k = fallback_cells == 0 ? std::max(a.cells(), b.cells()) : fallback_cells;
    double t = std::max(a.support(), b.support());
    return {a.resampled(k, t), b.resampled(k, t), false};
}

template AlignedPair<Sign::non_negative> align_grids(const StepGraphon&, const StepGraphon&, std::size_t, std::size_t);
template AlignedPair<Sign::signed_values> align_grids(const SignedStepGraphon&, const SignedStepGraphon&, std::size_t,
                                                      std::size_t);

namespace {

// Sum over overlapping non-zero cell pairs of (|u| + |v| - |u - v|) * area,
// iterating the finer grid and looking up the coarser one.
template <Sign F, Sign C>
double overlap_correction(const BasicStepGraphon<F>& fine, const BasicStepGraphon<C>& coarse) {
    const double wf = fine.cell_width(), wc = coarse.cell_width();
    const std::size_t kc = coarse.cells();
    detail::CompensatedSum total;
    for (std::size_t i = 0; i < fine.cells(); ++i) {
        auto cols = fine.values().row_cols(i);
        if (cols.empty()) continue;
        auto vals = fine.values().row_values(i);
        const double x0 = static_cast<double>(i) * wf, x1 = static_cast<double>(i + 1) * wf;
        if (x0 >= coarse.support()) break;
        std::size_t bi0 = static_cast<std::size_t>(x0 / wc);
        for (std::size_t bi = bi0; bi < kc && static_cast<double>(bi) * wc < x1; ++bi) {
            const double ox = std::min(x1, static_cast<double>(bi + 1) * wc) - std::max(x0, static_cast<double>(bi) * wc);
            if (ox <= 0.0) continue;
            auto ccols = coarse.values().row_cols(bi);
            if (ccols.empty()) continue;
            for (std::size_t p = 0; p < cols.size(); ++p) {
                const double y0 = static_cast<double>(cols[p]) * wf, y1 = y0 + wf;
                std::size_t bj0 = static_cast<std::size_t>(y0 / wc);
                for (std::size_t bj = bj0; bj < kc && static_cast<double>(bj) * wc < y1; ++bj) {
                    double v = coarse.at(bi, bj);
                    if (v == 0.0) continue;
                    const double oy =
                        std::min(y1, static_cast<double>(bj + 1) * wc) - std::max(y0, static_cast<double>(bj) * wc);
                    if (oy <= 0.0) continue;
                    const double u = vals[p];
                    total.add((std::abs(u) + std::abs(v) - std::abs(u - v)) * ox * oy);
                }
            }
        }
    }
    return total.value();
}

}  // namespace

template <Sign S1, Sign S2>
double l1_distance(const BasicStepGraphon<S1>& a, const BasicStepGraphon<S2>& b) {
    // |u - v| = |u| + |v| - (|u| + |v| - |u - v|) cell by cell, so only
    // overlapping non-zero cells need visiting.
    double base = a.l1_norm() + b.l1_norm();
    double correction = a.cell_width() <= b.cell_width() ? overlap_correction(a, b) : overlap_correction(b, a);
    return std::max(0.0, base - correction);
}

template double l1_distance(const StepGraphon&, const StepGraphon&);
template double l1_distance(const SignedStepGraphon&, const SignedStepGraphon&);
template double l1_distance(const StepGraphon&, const SignedStepGraphon&);
template double l1_distance(const SignedStepGraphon&, const StepGraphon&);

}  // namespace sgsp
