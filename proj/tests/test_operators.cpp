#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "sgsp/error.hpp"
#include "sgsp/operators.hpp"

using namespace sgsp;

namespace {

Eigen::MatrixXd dense_matrix(const StepGraphon& w) {
    const auto k = static_cast<Eigen::Index>(w.cells());
    auto d = w.values().to_dense();
    return Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d.data(), k, k);
}

StepSignal random_signal(std::size_t k, double support, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(k);
    for (auto& x : v) x = u(rng);
    return StepSignal(support, v);
}

// T f on the q-fold refinement of both grids, by plain sums.
std::vector<double> reference_apply(const StepGraphon& w, const StepSignal& f, std::size_t fine) {
    const double h = w.support() / static_cast<double>(fine);
    std::vector<double> out(fine, 0.0);
    for (std::size_t i = 0; i < fine; ++i) {
        for (std::size_t j = 0; j < fine; ++j) {
            const double x = (i + 0.5) * h, y = (j + 0.5) * h;
            out[i] += w.eval(x, y) * f.eval(y) * h;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("step operators stretch to unit 1-norm") {
    std::mt19937_64 rng(3);
    auto w = oracle::random_step(4, rng, 1.0, 0.2);
    GraphonOperator op{GraphonSpec(w)};
    CHECK(op.is_step());
    CHECK(op.kernel().l1_norm() == doctest::Approx(1.0));
    CHECK(op.stretch_factor() == doctest::Approx(std::sqrt(w.l1_norm())));
    CHECK(op.support() == doctest::Approx(1.0 / op.stretch_factor()));
    auto raw = GraphonOperator::from_kernel(w);
    CHECK(raw.kernel() == w);
    CHECK(raw.stretch_factor() == 1.0);
}

TEST_CASE("step operator matrix is value times cell width") {
    std::mt19937_64 rng(5);
    auto w = oracle::random_step(6, rng, 2.0);
    auto op = GraphonOperator::from_kernel(w);
    auto m = op.matrix();
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(m.at(i, j) == doctest::Approx(w.at(i, j) * w.cell_width()));
}

TEST_CASE("step operators act exactly on signals of any grid") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto w = oracle::random_step(5, rng, 1.0, 0.3);
        auto op = GraphonOperator::from_kernel(w);
        auto f = random_signal(7, 1.0, rng);
        auto g = op.apply(f);
        CHECK(g.cells() == 5);
        // reference on the 35-cell common refinement; exact for both grids
        auto ref = reference_apply(w, f, 35);
        for (std::size_t i = 0; i < 35; ++i) CHECK(g.eval((i + 0.5) / 35.0) == doctest::Approx(ref[i]).epsilon(1e-12));
        // a shorter signal is zero beyond its support
        auto shorter = random_signal(3, 0.6, rng);
        auto gs = op.apply(shorter);
        auto ref_s = reference_apply(w, shorter, 15);
        for (std::size_t i = 0; i < 15; ++i)
            CHECK(gs.eval((i + 0.5) / 15.0) == doctest::Approx(ref_s[i]).epsilon(1e-12));
    }
}

TEST_CASE("filters refuse signals reaching past the kernel support") {
    std::mt19937_64 rng(9);
    auto op = GraphonOperator::from_kernel(oracle::random_step(4, rng, 1.0));
    StepSignal f(2.0, {1.0, 1.0});
    // the kernel vanishes there, so T f only sees the first half
    CHECK(op.apply(f) == op.apply(StepSignal(1.0, {1.0})));
    try {
        apply_polynomial(PolynomialFilter{{1.0, 1.0}}, op, f);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::incompatible_grid);
    }
    StepSignal padded(2.0, {1.0, 0.0});
    CHECK_NOTHROW(apply_polynomial(PolynomialFilter{{1.0, 1.0}}, op, padded));
}

TEST_CASE("rank-one exponential operator in closed form") {
    // c = 1, decay 1 already has unit 1-norm
    GraphonOperator op{GraphonSpec(RankOneExp{1.0, 1.0})};
    CHECK_FALSE(op.is_step());
    CHECK(op.stretch_factor() == doctest::Approx(1.0));
    CHECK_THROWS_AS(op.kernel(), Error);
    const std::size_t k = 8;
    StepSignal f(1.0, std::vector<double>(k, 1.0));
    auto g = op.apply(f);
    const double inner = 1.0 - std::exp(-1.0);
    for (std::size_t i = 0; i < k; ++i) {
        const double a = double(i) / k, b = double(i + 1) / k;
        CHECK(g.values()[i] == doctest::Approx(inner * (std::exp(-a) - std::exp(-b)) * k).epsilon(1e-13));
    }
    // stretching by sqrt(c)/decay gives decay sqrt(c)
    GraphonOperator op2{GraphonSpec(RankOneExp{0.25, 2.0})};
    CHECK(op2.stretch_factor() == doctest::Approx(0.25));
}

TEST_CASE("operator norm bound") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        auto w = oracle::random_step(8, rng, 1.0, 0.5);
        GraphonOperator op{GraphonSpec(w)};
        Eigen::MatrixXd m = dense_matrix(op.kernel()) * op.kernel().cell_width();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
        const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(norm <= operator_norm_bound(GraphonSpec(w)) * (1.0 + 1e-12));
    }
    CHECK(operator_norm_bound(GraphonSpec(RankOneExp{1.0, 1.0})) == doctest::Approx(0.5));
    // a unit box of side 3 stretches to the unit square, whose operator has norm 1
    GraphonSpec big(ConstantBox{1.0, 3.0});
    CHECK(operator_norm_bound(big) == doctest::Approx(1.0));
    CHECK(ratio_norm_bound(big) == doctest::Approx(1.0 / 3.0));
    GraphonOperator unit(big);
    StepSignal one(unit.support(), {1.0});
    CHECK(unit.apply(one).l2_norm() == doctest::Approx(1.0));
    // below unit 1-norm the ratio is the looser of the two
    GraphonSpec small(ConstantBox{0.5, 1.0});
    CHECK(ratio_norm_bound(small) >= operator_norm_bound(small));
    try {
        operator_norm_bound(GraphonSpec(ConstantBox{0.0, 1.0}));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::zero_graphon);
    }
}

TEST_CASE("polynomial filters match matrix powers") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        auto w = oracle::random_step(6, rng, 1.0);
        GraphonOperator op{GraphonSpec(w)};
        const auto& kern = op.kernel();
        Eigen::MatrixXd t = dense_matrix(kern) * kern.cell_width();
        auto f = random_signal(6, kern.support(), rng);
        PolynomialFilter p{{0.5, -1.0, 2.0, 0.25}};
        CHECK(p.degree() == 3);
        CHECK(p(2.0) == doctest::Approx(0.5 - 2.0 + 8.0 + 2.0));
        Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(f.values().data(), 6);
        Eigen::VectorXd ref = 0.5 * x - t * x + 2.0 * t * t * x + 0.25 * t * t * t * x;
        auto g = apply_polynomial(p, op, f);
        for (int i = 0; i < 6; ++i) CHECK(g.values()[i] == doctest::Approx(ref(i)).epsilon(1e-12));
        CHECK(apply_polynomial(PolynomialFilter{}, op, f).l1_norm() == 0.0);
    }
}

TEST_CASE("chebyshev expansion of smooth filters") {
    SpectralFilter h([](double x) { return std::exp(x); }, -1.0, 1.0);
    CHECK(h(0.0) == 0.0);
    CHECK(h.probe_error() <= 1e-10);
    for (double x = -1.0; x <= 1.0; x += 0.01) CHECK(std::abs(h.approx(x) - (std::exp(x) - 1.0)) <= 1e-10);
    try {
        SpectralFilter bad([](double x) { return std::abs(x); }, -1.0, 1.0, 8);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_argument);
    }
    CHECK_THROWS_AS(SpectralFilter([](double x) { return x; }, 1.0, 1.0), Error);
    auto g = SpectralFilter::for_graphon([](double x) { return x * x; }, GraphonSpec(RankOneExp{1.0, 1.0}));
    CHECK(g.hi() == doctest::Approx(0.5));
    CHECK(g.lo() == doctest::Approx(-0.5));
}

TEST_CASE("spectral, chebyshev and polynomial routes agree") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        auto w = oracle::random_step(10, rng, 1.0, 0.3);
        GraphonOperator op{GraphonSpec(w)};
        auto f = random_signal(10, op.support(), rng);
        auto h = SpectralFilter::for_graphon([](double x) { return 1.0 + 2.0 * x - x * x; }, GraphonSpec(w));
        auto full = apply_spectral(h, op, f, 10);
        CHECK(full.truncation_bound == 0.0);
        CHECK(full.pairs_used == 10);
        auto poly = apply_polynomial(PolynomialFilter{{0.0, 2.0, -1.0}}, op, f);
        auto cheb = apply_chebyshev(h, op, f);
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(full.value.values()[i] == doctest::Approx(poly.values()[i]).epsilon(1e-9));
            CHECK(cheb.values()[i] == doctest::Approx(poly.values()[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("truncated spectral filtering stays within its bound") {
    std::mt19937_64 rng(19);
    auto w = oracle::random_step(40, rng, 1.0, 0.5);
    GraphonOperator op{GraphonSpec(w)};
    auto f = random_signal(40, op.support(), rng);
    auto h = SpectralFilter::for_graphon([](double x) { return std::exp(3.0 * x); }, GraphonSpec(w));
    auto full = apply_spectral(h, op, f, 40);
    for (std::size_t k : {1u, 4u, 10u}) {
        auto part = apply_spectral(h, op, f, k);
        CHECK(part.pairs_used == k);
        CHECK(part.truncation_bound > 0.0);
        CHECK(l2_distance(part.value, full.value) <= part.truncation_bound * (1.0 + 1e-9));
    }
}

TEST_CASE("spectral filtering needs a step kernel") {
    GraphonOperator op{GraphonSpec(RankOneExp{1.0, 1.0})};
    auto h = SpectralFilter([](double x) { return x; }, -1.0, 1.0);
    StepSignal f(1.0, {1.0});
    CHECK_THROWS_AS(apply_spectral(h, op, f, 1), Error);
}

TEST_CASE("operator gap") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        auto a = GraphonOperator::from_kernel(oracle::random_step(6, rng, 1.0));
        auto b = GraphonOperator::from_kernel(oracle::random_step(3, rng, 1.0));
        CHECK(operator_gap(a, a) == doctest::Approx(0.0).epsilon(1e-14));
        const double gap = operator_gap(a, b);
        CHECK(gap == doctest::Approx(operator_gap(b, a)).epsilon(1e-12));
        // reference: dense eigenvalues of the difference on the 6-cell grid
        auto aligned = align_grids(a.kernel(), b.kernel());
        Eigen::MatrixXd d = (dense_matrix(aligned.first) - dense_matrix(aligned.second)) * aligned.first.cell_width();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(d);
        CHECK(gap == doctest::Approx(es.eigenvalues().cwiseAbs().maxCoeff()).epsilon(1e-10));
        CHECK(gap <= d.norm() + 1e-12);  // Hilbert-Schmidt bound
    }
}
