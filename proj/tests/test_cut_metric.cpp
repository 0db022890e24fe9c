#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sgsp/cut_metric.hpp"
#include "sgsp/error.hpp"
#include "sgsp/graphon.hpp"

using namespace sgsp;

namespace {

CutOptions exact_cut() { return {CutMode::exact, 0, 0}; }

std::vector<double> dense_of(const SignedStepGraphon& w) { return w.values().to_dense(); }

}  // namespace

TEST_CASE("exact cut norm agrees with brute force bit for bit") {
    std::mt19937_64 rng(17);
    for (std::size_t k = 1; k <= 6; ++k) {
        for (int trial = 0; trial < 15; ++trial) {
            auto w = oracle::random_signed(k, rng, 0.5 + 0.1 * trial);
            auto res = cut_norm(w, exact_cut());
            CHECK(res.exact);
            CHECK(res.value == oracle::brute_force_cut(dense_of(w), k, w.cell_width()));
            CHECK(cut_objective(w, res.witness_rows, res.witness_cols) == res.value);
        }
    }
}

TEST_CASE("exact cut norm of small closed-form cases") {
    // [[1, -1], [-1, 1]] on the unit square: best is a single diagonal cell
    std::vector<double> v{1, -1, -1, 1};
    auto w = SignedStepGraphon::from_dense(2, 1.0, v);
    CHECK(cut_norm(w, exact_cut()).value == doctest::Approx(0.25));
    std::vector<double> c{0.5};
    CHECK(cut_norm(SignedStepGraphon::from_dense(1, 2.0, c), exact_cut()).value == doctest::Approx(2.0));
    CHECK(cut_norm(SignedStepGraphon(), exact_cut()).value == 0.0);
}

TEST_CASE("non-negative graphons have cut norm equal to their 1-norm") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto w = to_signed(oracle::random_step(30, rng, 1.3, 0.4));
        auto res = cut_norm(w);
        CHECK(res.value == doctest::Approx(w.l1_norm()).epsilon(1e-12));
    }
}

TEST_CASE("heuristic cut norm is a lower bound reached on small inputs") {
    std::mt19937_64 rng(29);
    int hits = 0, total = 0;
    for (std::size_t k = 2; k <= 10; ++k) {
        for (int trial = 0; trial < 6; ++trial) {
            auto w = oracle::random_signed(k, rng);
            double exact = cut_norm(w, exact_cut()).value;
            auto h = cut_norm(w, {CutMode::heuristic, 16, 3});
            CHECK_FALSE(h.exact);
            CHECK(h.value <= exact * (1.0 + 1e-12));
            CHECK(cut_objective(w, h.witness_rows, h.witness_cols) == h.value);
            hits += h.value >= exact * (1.0 - 1e-12);
            ++total;
        }
    }
    CHECK(hits >= total * 9 / 10);
}

TEST_CASE("cut norm properties") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = oracle::random_signed(7, rng);
        auto b = oracle::random_signed(7, rng);
        double na = cut_norm(a, exact_cut()).value;
        double nb = cut_norm(b, exact_cut()).value;
        double nab = cut_norm(SignedStepGraphon(a.support(), a.values().combine(1.0, b.values(), 1.0)),
                              exact_cut()).value;
        CHECK(nab <= na + nb + 1e-14);
        CHECK(na <= a.l1_norm() + 1e-14);
        CHECK(na >= std::abs(a.integral()) - 1e-14);
        double scaled = cut_norm(SignedStepGraphon(a.support(), a.values().combine(-2.5, a.values(), 0.0)),
                                 exact_cut()).value;
        CHECK(scaled == doctest::Approx(2.5 * na).epsilon(1e-13));
        // relabeling the cells does not change the norm
        std::vector<std::uint32_t> perm(7);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(cut_norm(a.permuted(perm), exact_cut()).value == doctest::Approx(na).epsilon(1e-13));
    }
}

TEST_CASE("exact cut norm refuses large grids") {
    std::mt19937_64 rng(37);
    auto w = oracle::random_signed(exact_cut_limit + 1, rng);
    try {
        cut_norm(w, exact_cut());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::resolution_too_large);
    }
}

TEST_CASE("heuristic cut norm is reproducible") {
    std::mt19937_64 rng(41);
    auto w = oracle::random_signed(40, rng);
    auto a = cut_norm(w, {CutMode::heuristic, 8, 5});
    auto b = cut_norm(w, {CutMode::heuristic, 8, 5});
    CHECK(a.value == b.value);
    CHECK(a.witness_rows == b.witness_rows);
    CHECK(a.witness_cols == b.witness_cols);
}

TEST_CASE("cut distance finds a hidden relabeling") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        auto w = oracle::random_step(6, rng);
        std::vector<std::uint32_t> perm(6);
        std::iota(perm.begin(), perm.end(), 0u);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto p = w.permuted(perm);
        AlignOptions opt;
        opt.mode = AlignMode::exact;
        opt.cut = exact_cut();
        auto res = cut_distance_steps(p, w, opt);
        CHECK(res.exact);
        CHECK(res.distance == 0.0);
        CHECK(p.permuted(res.permutation) == w);
    }
}

TEST_CASE("restricted alignments never beat the exact one and never lose to the identity") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 8; ++trial) {
        auto a = oracle::random_step(5, rng);
        auto b = oracle::random_step(5, rng);
        AlignOptions opt;
        opt.cut = exact_cut();
        opt.mode = AlignMode::exact;
        double best = cut_distance_steps(a, b, opt).distance;
        double identity = cut_norm(difference(a, b), exact_cut()).value;
        for (auto mode : {AlignMode::degree_sort, AlignMode::local_search}) {
            opt.mode = mode;
            auto res = cut_distance_steps(a, b, opt);
            CHECK_FALSE(res.exact);
            CHECK(res.distance >= best - 1e-15);
            CHECK(res.distance <= identity);
        }
        opt.mode = AlignMode::exact;
        CHECK(cut_distance_steps(b, a, opt).distance == doctest::Approx(best).epsilon(1e-13));
    }
}

TEST_CASE("cut distance on mismatched grids") {
    std::vector<double> one{1.0};
    auto a = StepGraphon::from_dense(1, 1.0, one);
    auto b = StepGraphon::from_dense(1, 2.0, one);
    auto res = cut_distance_steps(a, b);
    CHECK(res.distance == doctest::Approx(3.0));
    AlignOptions strict;
    strict.refine = false;
    try {
        cut_distance_steps(a, b, strict);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::incompatible_grid);
    }
}

TEST_CASE("stretching removes the scale of constant boxes") {
    auto res = stretched_cut_distance(GraphonSpec(ConstantBox{0.5, 1.0}), GraphonSpec(ConstantBox{0.5, 3.0}));
    CHECK(res.distance == doctest::Approx(0.0).epsilon(1e-14));
    auto pair = stretched_pair(GraphonSpec(ConstantBox{0.25, 2.0}), GraphonSpec(CelebrityLimit{}));
    CHECK(pair.exact);
    // the stretched box is 0.25 on [0, 2)^2 against 1 on [0, 1)^2
    CHECK(pair.l1_difference == doctest::Approx(0.75 + 3.0 * 0.25));
}

TEST_CASE("stretched clique graphs approach the unit square") {
    for (std::size_t n : {400u, 1600u}) {
        Graph g = celebrity_graph(n, 0.5);
        const std::size_t k = celebrity_core_size(n, 0.5);
        auto pair = stretched_pair(GraphonSpec(canonical_graphon(g)), GraphonSpec(CelebrityLimit{}));
        CHECK(std::abs(pair.l1_difference - static_cast<double>(oracle::clique_vs_unit_square_l1(k))) < 1e-12);
        auto res = stretched_cut_distance(GraphonSpec(canonical_graphon(g)), GraphonSpec(CelebrityLimit{}));
        CHECK(res.distance <= 2.0 / (k - 1));
        CHECK(res.distance <= pair.l1_difference + 1e-12);
    }
}

TEST_CASE("exponential kernels are compared after truncation") {
    auto res = stretched_pair(GraphonSpec(RankOneExp{1.0, 1.0}), GraphonSpec(RankOneExp{4.0, 2.0}), 256);
    CHECK_FALSE(res.exact);
    CHECK(res.first.cells() >= 256);
    // same amplitude, different decay: stretching maps both to one kernel
    auto d = stretched_cut_distance(GraphonSpec(RankOneExp{0.5, 1.0}), GraphonSpec(RankOneExp{0.5, 3.0}));
    CHECK(d.distance < 1e-9);
    auto far = stretched_cut_distance(GraphonSpec(RankOneExp{1.0, 1.0}), GraphonSpec(RankOneExp{4.0, 2.0}));
    CHECK(far.distance > 0.01);
}

TEST_CASE("1-norms of non-negative graphons are cut-norm continuous") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t k = 2 + trial % 7;
        auto a = oracle::random_step(k, rng, 1.0 + 0.05 * trial, 0.3);
        auto b = oracle::random_step(k, rng, 1.0 + 0.05 * trial, 0.3);
        double gap = cut_norm(difference(a, b), exact_cut()).value;
        CHECK(std::abs(a.l1_norm() - b.l1_norm()) <= gap + 1e-14);
    }
}

TEST_CASE("stretching is continuous in the factor") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        auto w = oracle::random_step(6, rng, 1.0, 0.2);
        double first = 0.0, last = 0.0;
        for (int i = 1; i <= 8; ++i) {
            const double eps = std::ldexp(1.0, -i);
            double d = l1_distance(w.stretched(1.0 + eps), w);
            // every cell edge moves by at most eps, so the two differ on 2k strips of area eps
            CHECK(d <= 2.0 * 6 * eps * w.value_bound() + 1e-12);
            if (i == 1) first = d;
            last = d;
        }
        CHECK(last < first);
    }
}
