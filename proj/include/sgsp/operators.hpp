#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sgsp/csr.hpp"
#include "sgsp/eigensolver.hpp"
#include "sgsp/graphon.hpp"
#include "sgsp/signal.hpp"

namespace sgsp {

/// The integral operator f -> int W^s(., y) f(y) dy of a stretched graphon.
///
/// Step kernels act exactly on step signals of any grid (cell integrals are
/// taken over the merged breakpoints) and return a step signal on the kernel
/// grid. Exponential rank-one kernels act in closed form and return cell
/// averages on the input grid, dropping the output beyond its support.
class GraphonOperator {
public:
    /// Stretches `w` to unit 1-norm first.
    explicit GraphonOperator(const GraphonSpec& w);
    /// Uses `kernel` as given, without stretching.
    static GraphonOperator from_kernel(const StepGraphon& kernel);

    bool is_step() const noexcept { return kernel_.has_value(); }
    /// Throws invalid_argument for rank-one operators.
    const StepGraphon& kernel() const;
    double stretch_factor() const noexcept { return stretch_; }
    std::size_t cells() const noexcept { return kernel_ ? kernel_->cells() : 0; }
    double support() const noexcept;

    /// Matrix of the action on the kernel grid: value(i, j) * cell width.
    CsrMatrix matrix() const;

    StepSignal apply(const StepSignal& f) const;

private:
    GraphonOperator() = default;
    std::optional<StepGraphon> kernel_;
    RankOneExp rank_one_{};
    double stretch_ = 1.0;
};

/// ||W||_2 / sqrt(||W||_1): the Hilbert-Schmidt norm of the stretched kernel,
/// so an upper bound on the norm of the stretched operator.
///
/// ||W||_2 / ||W||_1 is smaller than this once ||W||_1 > 1 and is not a bound
/// there (a unit box of side 3 gives 1/3 against a true norm of 1); it is
/// kept as ratio_norm_bound for comparison.
double operator_norm_bound(const GraphonSpec& w);
double ratio_norm_bound(const GraphonSpec& w);

/// c0 + c1 x + ... + cd x^d.
struct PolynomialFilter {
    std::vector<double> coefficients;

    std::size_t degree() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }
    double operator()(double x) const noexcept;
};

/// c0 f + c1 T f + ... + cd T^d f by Horner's rule (d kernel applications).
/// `f` must refine exactly onto the operator grid.
StepSignal apply_polynomial(const PolynomialFilter& p, const GraphonOperator& op, const StepSignal& f);

/// A scalar function h with h(0) subtracted, together with its Chebyshev
/// expansion on [lo, hi].
class SpectralFilter {
public:
    /// Interpolates at `degree + 1` Chebyshev points; throws when the
    /// reconstruction error at 1000 probe points exceeds `tol`.
    SpectralFilter(std::function<double(double)> h, double lo, double hi, std::size_t degree = 48,
                   double tol = 1e-10);
    /// Interval [-bound, bound] from operator_norm_bound.
    static SpectralFilter for_graphon(std::function<double(double)> h, const GraphonSpec& w,
                                      std::size_t degree = 48, double tol = 1e-10);

    /// h(x) - h(0).
    double operator()(double x) const { return h_(x) - h0_; }
    /// The Chebyshev expansion at x (Clenshaw).
    double approx(double x) const noexcept;

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double probe_error() const noexcept { return probe_error_; }
    const std::vector<double>& chebyshev() const noexcept { return coef_; }

private:
    std::function<double(double)> h_;
    double h0_ = 0.0;
    double lo_ = -1.0, hi_ = 1.0;
    std::vector<double> coef_;
    double probe_error_ = 0.0;
};

struct SpectralResult {
    StepSignal value;
    // max |h| over the discarded eigenvalues times ||f||_2; 0 when nothing was dropped
    double truncation_bound = 0.0;
    std::size_t pairs_used = 0;
};

/// sum over eigenpairs of h(lambda) <f, phi> phi, using the `k_eigs`
/// eigenpairs of largest magnitude (all of them when k_eigs >= cells).
SpectralResult apply_spectral(const SpectralFilter& h, const GraphonOperator& op, const StepSignal& f,
                              std::size_t k_eigs, const EigenOptions& options = {});

/// The Chebyshev expansion of h applied as an operator polynomial.
StepSignal apply_chebyshev(const SpectralFilter& h, const GraphonOperator& op, const StepSignal& f);

/// Operator norm of the difference of two step operators, after bringing
/// their kernels onto a common grid.
double operator_gap(const GraphonOperator& a, const GraphonOperator& b, std::size_t refine_k = 0);

}  // namespace sgsp
