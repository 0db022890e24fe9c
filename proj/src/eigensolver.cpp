#include "sgsp/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "sgsp/error.hpp"
#include "sgsp/rng.hpp"

namespace sgsp {

namespace {

struct Pairs {
    std::vector<double> values;  // in the order they should be reported
    std::vector<Eigen::VectorXd> vectors;
    std::vector<double> residuals;
};

struct Solved {
    Pairs top;     // decreasing
    Pairs bottom;  // increasing
    double norm = 0.0;
};

void apply(const CsrMatrix& a, const Eigen::VectorXd& x, Eigen::Ref<Eigen::VectorXd> y, double sign) {
    a.multiply(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
               std::span<double>(y.data(), static_cast<std::size_t>(y.size())), sign);
}

Solved dense_solve(const CsrMatrix& a, std::size_t k_top, std::size_t k_bottom) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    const std::vector<double> d = a.to_dense();
    Eigen::MatrixXd m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        d.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::no_convergence, "dense eigensolver failed");
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    Solved out;
    out.norm = n == 0 ? 0.0 : std::max(std::abs(vals(0)), std::abs(vals(n - 1)));
    auto take = [&](Eigen::Index idx, Pairs& p) {
        Eigen::VectorXd v = vecs.col(idx);
        p.values.push_back(vals(idx));
        p.residuals.push_back((m * v - vals(idx) * v).norm());
        p.vectors.push_back(std::move(v));
    };
    for (std::size_t i = 0; i < k_top; ++i) take(n - 1 - static_cast<Eigen::Index>(i), out.top);
    for (std::size_t i = 0; i < k_bottom; ++i) take(static_cast<Eigen::Index>(i), out.bottom);
    return out;
}

// Removes the components along the first `cols` columns of v, twice.
void orthogonalize(const Eigen::MatrixXd& v, Eigen::Index cols, Eigen::VectorXd& r) {
    for (int pass = 0; pass < 2; ++pass) {
        Eigen::VectorXd h = v.leftCols(cols).transpose() * r;
        r.noalias() -= v.leftCols(cols) * h;
    }
}

// Largest k eigenpairs of sign * A by thick-restarted Lanczos with full
// reorthogonalization. The Rayleigh quotient matrix is formed from stored
// products A v, so reported residuals are computed, not estimated.
Pairs lanczos_top(const CsrMatrix& a, double sign, std::size_t k, const EigenOptions& opt, double& norm_est) {
    const auto n = static_cast<Eigen::Index>(a.dim());
    const auto kk = static_cast<Eigen::Index>(k);
    const Eigen::Index m = std::min<Eigen::Index>(n, std::max<Eigen::Index>(2 * kk + 20, 40));
    Eigen::MatrixXd basis(n, m), image(n, m);
    Philox rng(opt.seed, sign > 0 ? 1 : 2);
    auto random_vector = [&] {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform() - 0.5;
        return v;
    };

    Eigen::VectorXd pending = random_vector().normalized();
    Eigen::Index cols = 0;
    std::vector<double> best_res;
    for (std::size_t restart = 0; restart <= opt.max_restarts; ++restart) {
        bool exhausted = false;
        while (cols < m) {
            basis.col(cols) = pending;
            apply(a, pending, image.col(cols), sign);
            norm_est = std::max(norm_est, image.col(cols).norm());
            ++cols;
            if (cols == m) break;
            Eigen::VectorXd r = image.col(cols - 1);
            orthogonalize(basis, cols, r);
            double rn = r.norm();
            if (rn <= 1e-12 * std::max(norm_est, 1e-300)) {
                // invariant subspace; continue from a fresh direction
                r = random_vector();
                orthogonalize(basis, cols, r);
                rn = r.norm();
                if (rn <= 1e-12) {
                    exhausted = true;
                    break;
                }
            }
            pending = r / rn;
        }

        Eigen::MatrixXd h = basis.leftCols(cols).transpose() * image.leftCols(cols);
        h = 0.5 * (h + h.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        const auto& theta = es.eigenvalues();
        norm_est = std::max({norm_est, std::abs(theta(0)), std::abs(theta(cols - 1))});

        const Eigen::Index want = std::min(kk, cols);
        Eigen::MatrixXd y = es.eigenvectors().rightCols(want).rowwise().reverse();
        Eigen::MatrixXd x = basis.leftCols(cols) * y;
        Eigen::MatrixXd ax = image.leftCols(cols) * y;
        Pairs out;
        bool converged = true;
        best_res.clear();
        for (Eigen::Index i = 0; i < want; ++i) {
            const double lam = theta(cols - 1 - i);
            const double res = (ax.col(i) - lam * x.col(i)).norm();
            out.values.push_back(lam);
            out.residuals.push_back(res);
            out.vectors.push_back(x.col(i));
            best_res.push_back(res);
            converged &= res <= opt.tol * std::max(norm_est, 1e-300);
        }
        if (converged || exhausted) return out;

        Eigen::VectorXd r = image.col(cols - 1);
        orthogonalize(basis, cols, r);
        double rn = r.norm();
        if (rn <= 1e-12 * std::max(norm_est, 1e-300)) {
            r = random_vector();
            orthogonalize(basis, cols, r);
            rn = r.norm();
            if (rn <= 1e-12) return out;
        }
        const Eigen::Index keep = std::min<Eigen::Index>(cols - 1, std::max<Eigen::Index>(kk + 5, m / 2));
        Eigen::MatrixXd yk = es.eigenvectors().rightCols(keep);
        Eigen::MatrixXd nb = basis.leftCols(cols) * yk;
        Eigen::MatrixXd ni = image.leftCols(cols) * yk;
        basis.leftCols(keep) = nb;
        image.leftCols(keep) = ni;
        cols = keep;
        pending = r / rn;
    }
    std::string res;
    for (double r : best_res) res += fmt::format(" {:.3e}", r);
    throw Error(ErrorKind::no_convergence,
                fmt::format("Lanczos did not converge in {} restarts (dim {}); residuals:{}", opt.max_restarts, n, res));
}

Solved iterative_solve(const CsrMatrix& a, std::size_t k_top, std::size_t k_bottom, const EigenOptions& opt) {
    Solved out;
    double norm = 0.0;
    if (k_top > 0) out.top = lanczos_top(a, 1.0, k_top, opt, norm);
    if (k_bottom > 0) {
        out.bottom = lanczos_top(a, -1.0, k_bottom, opt, norm);
        for (double& v : out.bottom.values) v = -v;
    }
    out.norm = norm;
    return out;
}

}  // namespace

EigenReport eigensolve(const CsrMatrix& a, std::size_t k_pos, std::size_t k_neg, const EigenOptions& options) {
    const std::size_t n = a.dim();
    if (!a.is_symmetric()) throw Error(ErrorKind::invalid_argument, "eigensolve needs a symmetric matrix");

    // zero rows only add zero eigenvalues; solve on the rest
    std::vector<std::uint32_t> kept, dropped, index(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.row_cols(i).empty()) {
            dropped.push_back(static_cast<std::uint32_t>(i));
        } else {
            index[i] = static_cast<std::uint32_t>(kept.size());
            kept.push_back(static_cast<std::uint32_t>(i));
        }
    }
    std::vector<CsrMatrix::Entry> entries;
    entries.reserve(a.nnz());
    for (auto i : kept) {
        auto c = a.row_cols(i);
        auto v = a.row_values(i);
        for (std::size_t e = 0; e < c.size(); ++e) entries.push_back({index[i], index[c[e]], v[e]});
    }
    const CsrMatrix reduced = CsrMatrix::from_triplets(kept.size(), std::move(entries));
    const std::size_t nr = kept.size();
    const std::size_t kt = std::min(k_pos, nr), kb = std::min(k_neg, nr);

    EigenReport report;
    Solved solved;
    if (nr > 0) {
        report.dense = nr <= options.dense_threshold;
        solved = report.dense ? dense_solve(reduced, kt, kb) : iterative_solve(reduced, kt, kb, options);
    }
    report.norm_estimate = solved.norm;

    auto lift = [&](const Eigen::VectorXd& v) {
        std::vector<double> full(n, 0.0);
        for (std::size_t i = 0; i < nr; ++i) full[kept[i]] = v(static_cast<Eigen::Index>(i));
        return full;
    };
    auto unit = [&](std::uint32_t i) {
        std::vector<double> full(n, 0.0);
        full[i] = 1.0;
        return full;
    };
    // merge the computed extremes with the zero eigenvalues of dropped rows
    auto fill = [&](const Pairs& p, std::size_t k, bool top, std::vector<double>& raw, std::vector<double>& res,
                    std::vector<std::vector<double>>& vecs) {
        std::size_t used = 0, zeros = 0;
        for (std::size_t s = 0; s < k; ++s) {
            const bool have = used < p.values.size();
            const bool zero_left = zeros < dropped.size();
            if (!have && !zero_left) {
                // more slots than the matrix has eigenvalues
                raw.push_back(0.0);
                res.push_back(0.0);
                if (options.want_vectors) vecs.emplace_back(n, 0.0);
                continue;
            }
            const bool take_zero =
                zero_left && (!have || (top ? 0.0 > p.values[used] : 0.0 < p.values[used]));
            if (take_zero) {
                raw.push_back(0.0);
                res.push_back(0.0);
                if (options.want_vectors) vecs.push_back(unit(dropped[zeros]));
                ++zeros;
            } else {
                raw.push_back(p.values[used]);
                res.push_back(p.residuals[used]);
                if (options.want_vectors) vecs.push_back(lift(p.vectors[used]));
                ++used;
            }
        }
    };
    fill(solved.top, k_pos, true, report.raw_positive, report.residual_positive, report.positive_vectors);
    fill(solved.bottom, k_neg, false, report.raw_negative, report.residual_negative, report.negative_vectors);
    // values below the solver's resolution are zeros of the operator
    const double floor = std::max(options.tol, 1e-12) * report.norm_estimate;
    auto label = [&](double v) { return std::abs(v) <= floor ? 0.0 : v; };
    for (double v : report.raw_positive) report.positive.push_back(std::max(label(v), 0.0));
    for (double v : report.raw_negative) report.negative.push_back(std::min(label(v), 0.0));
    return report;
}

EigenReport eigensolve(const Graph& g, std::size_t k_pos, std::size_t k_neg, const EigenOptions& options) {
    return eigensolve(g.adjacency(), k_pos, k_neg, options);
}

}  // namespace sgsp
