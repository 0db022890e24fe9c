#include "sgsp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sgsp/error.hpp"

namespace sgsp {

GraphonOperator::GraphonOperator(const GraphonSpec& w) {
    auto [s, tag] = stretch(w);
    stretch_ = tag.factor;
    if (auto step = exact_step_form(s)) {
        kernel_ = std::move(*step);
    } else {
        rank_one_ = std::get<RankOneExp>(s.variant());
    }
}

GraphonOperator GraphonOperator::from_kernel(const StepGraphon& kernel) {
    GraphonOperator op;
    op.kernel_ = kernel;
    return op;
}

const StepGraphon& GraphonOperator::kernel() const {
    if (!kernel_) throw Error(ErrorKind::invalid_argument, "operator has no step kernel (rank-one form)");
    return *kernel_;
}

double GraphonOperator::support() const noexcept {
    return kernel_ ? kernel_->support() : std::numeric_limits<double>::infinity();
}

CsrMatrix GraphonOperator::matrix() const {
    const StepGraphon& k = kernel();
    return CsrMatrix(k.values()).combine(k.cell_width(), CsrMatrix(k.cells()), 0.0);
}

namespace {

// Integrals of f over the cells of a k-cell grid on [0, support).
std::vector<double> cell_integrals(const StepSignal& f, std::size_t k, double support) {
    std::vector<double> out(k, 0.0);
    if (k == 0 || f.cells() == 0) return out;
    const double wk = support / static_cast<double>(k);
    const double wf = f.cell_width();
    const double end = std::min(support, f.support());
    std::size_t i = 0, j = 0;
    double x = 0.0;
    while (x < end && i < k && j < f.cells()) {
        const double ni = static_cast<double>(i + 1) * wk;
        const double nj = static_cast<double>(j + 1) * wf;
        const double next = std::min({ni, nj, end});
        if (next > x) out[i] += (next - x) * f.values()[j];
        x = next;
        if (ni == next) ++i;
        if (nj == next) ++j;
    }
    return out;
}

StepSignal on_operator_grid(const StepSignal& f, const GraphonOperator& op) {
    if (!op.is_step()) return f;
    if (f.support() > op.support()) {
        for (std::size_t i = 0; i < f.cells(); ++i) {
            if (static_cast<double>(i + 1) * f.cell_width() > op.support() && f.values()[i] != 0.0) {
                throw Error(ErrorKind::incompatible_grid, "signal is nonzero beyond the operator support");
            }
        }
        const std::size_t keep = static_cast<std::size_t>(std::llround(op.support() / f.cell_width()));
        std::vector<double> v(f.values().begin(), f.values().begin() + static_cast<std::ptrdiff_t>(std::min(keep, f.cells())));
        const double kept = static_cast<double>(v.size()) * f.cell_width();
        return refine_to(StepSignal(kept, std::move(v)), op.cells(), op.support());
    }
    return refine_to(f, op.cells(), op.support());
}

}  // namespace

StepSignal GraphonOperator::apply(const StepSignal& f) const {
    if (kernel_) {
        const std::size_t k = kernel_->cells();
        const auto mass = cell_integrals(f, k, kernel_->support());
        const auto out = kernel_->values().multiply(mass);
        return StepSignal(kernel_->support(), out);
    }
    // c e^{-l x} * int e^{-l y} f(y) dy, averaged over the cells of f
    const double c = rank_one_.amplitude, l = rank_one_.decay;
    const double w = f.cell_width();
    std::vector<double> cell(f.cells());
    double inner = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i) {
        const double a = static_cast<double>(i) * w;
        cell[i] = std::exp(-l * a) * -std::expm1(-l * w) / l;
        inner += f.values()[i] * cell[i];
    }
    std::vector<double> out(f.cells());
    for (std::size_t i = 0; i < f.cells(); ++i) out[i] = c * inner * cell[i] / w;
    return StepSignal(f.support(), std::move(out));
}

double operator_norm_bound(const GraphonSpec& w) {
    const double l1 = w.l1_norm();
    if (!(l1 > 0.0)) throw Error(ErrorKind::zero_graphon, "operator norm bound of a graphon with zero 1-norm");
    return w.l2_norm() / std::sqrt(l1);
}

double ratio_norm_bound(const GraphonSpec& w) {
    const double l1 = w.l1_norm();
    if (!(l1 > 0.0)) throw Error(ErrorKind::zero_graphon, "norm ratio of a graphon with zero 1-norm");
    return w.l2_norm() / l1;
}

double PolynomialFilter::operator()(double x) const noexcept {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

StepSignal apply_polynomial(const PolynomialFilter& p, const GraphonOperator& op, const StepSignal& f) {
    const StepSignal g = on_operator_grid(f, op);
    if (p.coefficients.empty()) return g.scaled(0.0);
    StepSignal acc = g.scaled(p.coefficients.back());
    for (std::size_t i = p.coefficients.size() - 1; i-- > 0;) {
        acc = op.apply(acc).combine(1.0, g, p.coefficients[i]);
    }
    return acc;
}

SpectralFilter::SpectralFilter(std::function<double(double)> h, double lo, double hi, std::size_t degree, double tol)
    : h_(std::move(h)), lo_(lo), hi_(hi) {
    if (!(hi > lo)) throw Error(ErrorKind::invalid_argument, "Chebyshev interval must have hi > lo");
    h0_ = h_(0.0);
    const std::size_t n = degree + 1;
    const double mid = 0.5 * (hi + lo), half = 0.5 * (hi - lo);
    std::vector<double> samples(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = std::cos(std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
        samples[j] = (*this)(mid + half * s);
    }
    coef_.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += samples[j] * std::cos(std::numbers::pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) /
                                         static_cast<double>(n));
        }
        coef_[k] = 2.0 * sum / static_cast<double>(n);
    }
    coef_[0] *= 0.5;
    for (int i = 0; i < 1000; ++i) {
        const double x = lo + (hi - lo) * i / 999.0;
        probe_error_ = std::max(probe_error_, std::abs(approx(x) - (*this)(x)));
    }
    if (probe_error_ > tol) {
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("Chebyshev degree {} reaches error {:.3e} > {:.3e}; raise the degree", degree,
                                probe_error_, tol));
    }
}

SpectralFilter SpectralFilter::for_graphon(std::function<double(double)> h, const GraphonSpec& w, std::size_t degree,
                                           double tol) {
    const double b = operator_norm_bound(w);
    return SpectralFilter(std::move(h), -b, b, degree, tol);
}

double SpectralFilter::approx(double x) const noexcept {
    const double s = (2.0 * x - (hi_ + lo_)) / (hi_ - lo_);
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = coef_.size(); k-- > 1;) {
        const double b0 = coef_[k] + 2.0 * s * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return coef_[0] + s * b1 - b2;
}

StepSignal apply_chebyshev(const SpectralFilter& h, const GraphonOperator& op, const StepSignal& f) {
    const StepSignal g = on_operator_grid(f, op);
    const double lo = h.lo(), hi = h.hi();
    auto mapped = [&](const StepSignal& v) {
        return op.apply(v).combine(2.0 / (hi - lo), v, -(hi + lo) / (hi - lo));
    };
    const auto& c = h.chebyshev();
    StepSignal b1 = g.scaled(0.0), b2 = b1;
    for (std::size_t k = c.size(); k-- > 1;) {
        StepSignal b0 = mapped(b1).combine(2.0, g, c[k]).combine(1.0, b2, -1.0);
        b2 = std::move(b1);
        b1 = std::move(b0);
    }
    return mapped(b1).combine(1.0, g, c[0]).combine(1.0, b2, -1.0);
}

SpectralResult apply_spectral(const SpectralFilter& h, const GraphonOperator& op, const StepSignal& f,
                              std::size_t k_eigs, const EigenOptions& options) {
    if (!op.is_step()) {
        throw Error(ErrorKind::invalid_argument, "spectral filtering needs a step kernel; discretize the graphon first");
    }
    const StepSignal g = on_operator_grid(f, op);
    const CsrMatrix m = op.matrix();
    const std::size_t k = m.dim();
    EigenOptions opt = options;
    opt.want_vectors = true;
    const bool full = k_eigs >= k || 2 * k_eigs > k;
    const std::size_t kp = full ? (k + 1) / 2 : k_eigs;
    const std::size_t kn = full ? k / 2 : k_eigs;
    const EigenReport rep = eigensolve(m, kp, kn, opt);

    struct Pair {
        double value;
        const std::vector<double>* vec;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < rep.raw_positive.size(); ++i) pairs.push_back({rep.raw_positive[i], &rep.positive_vectors[i]});
    for (std::size_t i = 0; i < rep.raw_negative.size(); ++i) pairs.push_back({rep.raw_negative[i], &rep.negative_vectors[i]});
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const Pair& a, const Pair& b) { return std::abs(a.value) > std::abs(b.value); });
    SpectralResult out;
    if (!full && pairs.size() > k_eigs) pairs.resize(k_eigs);
    out.pairs_used = pairs.size();

    // with unit eigenvectors u of the cell matrix the cell width cancels:
    // h(l) <f, phi> phi_i = h(l) (u . f) u_i
    std::vector<double> acc(k, 0.0);
    const auto fv = g.values();
    for (const auto& p : pairs) {
        const auto& u = *p.vec;
        double dot = 0.0;
        for (std::size_t i = 0; i < k; ++i) dot += u[i] * fv[i];
        const double s = h(p.value) * dot;
        for (std::size_t i = 0; i < k; ++i) acc[i] += s * u[i];
    }
    out.value = StepSignal(op.support(), std::move(acc));

    if (!full) {
        const double cut = pairs.empty() ? std::max(std::abs(h.lo()), std::abs(h.hi())) : std::abs(pairs.back().value);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) worst = std::max(worst, std::abs(h(-cut + 2.0 * cut * i / 999.0)));
        out.truncation_bound = worst * g.l2_norm();
    }
    return out;
}

double operator_gap(const GraphonOperator& a, const GraphonOperator& b, std::size_t refine_k) {
    auto pair = align_grids(a.kernel(), b.kernel(), refine_k);
    const SignedStepGraphon d = difference(pair.first, pair.second);
    const CsrMatrix m = CsrMatrix(d.values()).combine(d.cell_width(), CsrMatrix(d.cells()), 0.0);
    if (m.dim() == 0) return 0.0;
    const std::size_t kp = 1, kn = m.dim() > 1 ? 1 : 0;
    const EigenReport rep = eigensolve(m, kp, kn);
    double gap = 0.0;
    for (double v : rep.raw_positive) gap = std::max(gap, std::abs(v));
    for (double v : rep.raw_negative) gap = std::max(gap, std::abs(v));
    return gap;
}

}  // namespace sgsp
