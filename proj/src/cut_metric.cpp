#include "sgsp/cut_metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "sgsp/error.hpp"
#include "sgsp/rng.hpp"

namespace sgsp {

namespace {

std::vector<std::uint32_t> members(const std::vector<char>& mask) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

std::vector<std::uint32_t> bits_of(std::uint64_t set, std::size_t k) {
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < k; ++i) {
        if (set >> i & 1u) out.push_back(static_cast<std::uint32_t>(i));
    }
    return out;
}

struct Candidate {
    std::uint64_t rows;
    int sign;
    double value;
};

CutResult exact_cut(const SignedStepGraphon& w) {
    const std::size_t k = w.cells();
    const std::vector<double> dense = w.values().to_dense();
    std::vector<double> col(k, 0.0);

    // Gray-code sweep over row subsets; for a fixed row set the best column
    // set takes every column whose partial sum has the wanted sign. Running
    // sums drift, so everything within a relative band of the best is kept
    // and re-scored canonically at the end.
    constexpr double band = 1e-9;
    std::vector<Candidate> near;
    double best = 0.0;
    auto consider = [&](std::uint64_t rows) {
        double pos = 0.0, neg = 0.0;
        for (double c : col) (c > 0.0 ? pos : neg) += c;
        for (auto [val, sign] : {std::pair{pos, 1}, std::pair{-neg, -1}}) {
            if (!(val > 0.0) || val < best * (1.0 - band)) continue;
            if (val > best) {
                best = val;
                std::erase_if(near, [&](const Candidate& c) { return c.value < best * (1.0 - band); });
            }
            near.push_back({rows, sign, val});
        }
    };

    std::uint64_t rows = 0;
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t step = 1; step < total; ++step) {
        const auto flip = static_cast<std::size_t>(std::countr_zero(step));
        rows ^= std::uint64_t{1} << flip;
        const double sgn = (rows >> flip & 1u) ? 1.0 : -1.0;
        const double* r = &dense[flip * k];
        for (std::size_t j = 0; j < k; ++j) col[j] += sgn * r[j];
        consider(rows);
    }

    CutResult out;
    out.exact = true;
    for (const auto& c : near) {
        std::vector<char> cmask(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
            double cs = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                if (c.rows >> i & 1u) cs += dense[i * k + j];
            }
            cmask[j] = c.sign * cs > 0.0;
        }
        auto rws = bits_of(c.rows, k);
        auto cls = members(cmask);
        double v = cut_objective(w, rws, cls);
        if (v > out.value) {
            out.value = v;
            out.witness_rows = std::move(rws);
            out.witness_cols = std::move(cls);
        }
    }
    return out;
}

// One alternating maximization run for the given sign, starting from `rows`.
void alternate(const SignedStepGraphon& w, std::vector<char>& rows, std::vector<char>& cols, int sign) {
    const CsrMatrix& m = w.values();
    const std::size_t k = w.cells();
    std::vector<double> sums(k);
    auto best_response = [&](const std::vector<char>& from, std::vector<char>& to) {
        // values are symmetric, so column sums over `from` are row products
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t i = 0; i < k; ++i) {
            if (!from[i]) continue;
            auto c = m.row_cols(i);
            auto v = m.row_values(i);
            for (std::size_t e = 0; e < c.size(); ++e) sums[c[e]] += v[e];
        }
        bool changed = false;
        for (std::size_t j = 0; j < k; ++j) {
            char want = sign * sums[j] > 0.0;  // exact zero -> excluded
            changed |= want != to[j];
            to[j] = want;
        }
        return changed;
    };
    best_response(rows, cols);
    for (int it = 0; it < 200; ++it) {
        bool a = best_response(cols, rows);
        bool b = best_response(rows, cols);
        if (!a && !b) break;
    }
}

CutResult heuristic_cut(const SignedStepGraphon& w, const CutOptions& opt) {
    const std::size_t k = w.cells();
    CutResult out;
    if (k == 0) return out;
    const std::vector<double> row_sum = w.row_sums();
    Philox rng(opt.seed, 0x6375u);
    const std::size_t restarts = std::max<std::size_t>(opt.restarts, 1);
    for (std::size_t r = 0; r < restarts; ++r) {
        std::vector<char> start(k, 1);
        if (r == 1) {
            for (std::size_t i = 0; i < k; ++i) start[i] = row_sum[i] > 0.0;
        } else if (r >= 2) {
            for (std::size_t i = 0; i < k; ++i) start[i] = rng.uniform() < 0.5;
        }
        for (int sign : {1, -1}) {
            std::vector<char> rows = start, cols(k, 0);
            alternate(w, rows, cols, sign);
            auto rws = members(rows);
            auto cls = members(cols);
            double v = cut_objective(w, rws, cls);
            if (v > out.value) {
                out.value = v;
                out.witness_rows = std::move(rws);
                out.witness_cols = std::move(cls);
            }
        }
    }
    return out;
}

double alignment_cost(const StepGraphon& w1, const StepGraphon& w2, std::span<const std::uint32_t> perm,
                      const CutOptions& cut) {
    auto diff = difference(w1.permuted(perm), w2);
    return cut_norm(diff, cut).value;
}

std::vector<std::uint32_t> sorted_by_degree(const StepGraphon& w) {
    const auto sums = w.row_sums();
    std::vector<std::uint32_t> order(sums.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return sums[a] > sums[b]; });
    return order;
}

}  // namespace

double cut_objective(const SignedStepGraphon& w, std::span<const std::uint32_t> rows,
                     std::span<const std::uint32_t> cols) {
    const std::size_t k = w.cells();
    std::vector<char> in_cols(k, 0);
    for (auto j : cols) {
        if (j >= k) throw Error(ErrorKind::invalid_argument, "cut witness index out of range");
        in_cols[j] = 1;
    }
    std::vector<double> terms;
    const CsrMatrix& m = w.values();
    for (auto i : rows) {
        if (i >= k) throw Error(ErrorKind::invalid_argument, "cut witness index out of range");
        auto c = m.row_cols(i);
        auto v = m.row_values(i);
        for (std::size_t e = 0; e < c.size(); ++e) {
            if (in_cols[c[e]]) terms.push_back(v[e]);
        }
    }
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    const double cw = w.cell_width();
    return std::abs(s) * cw * cw;
}

CutResult cut_norm(const SignedStepGraphon& w, const CutOptions& options) {
    if (options.mode == CutMode::exact) {
        if (w.cells() > exact_cut_limit) {
            throw Error(ErrorKind::resolution_too_large,
                        "exact cut norm needs at most " + std::to_string(exact_cut_limit) + " cells, got " +
                            std::to_string(w.cells()));
        }
        return exact_cut(w);
    }
    return heuristic_cut(w, options);
}

AlignmentResult cut_distance_steps(const StepGraphon& w1, const StepGraphon& w2, const AlignOptions& options) {
    bool grid_exact = true;
    StepGraphon a = w1, b = w2;
    if (a.cells() != b.cells() || a.support() != b.support()) {
        if (!options.refine) {
            throw Error(ErrorKind::incompatible_grid, "graphons live on different grids and refinement is off");
        }
        auto pair = align_grids(a, b, options.refine_k);
        a = std::move(pair.first);
        b = std::move(pair.second);
        grid_exact = pair.exact;
    }
    const std::size_t k = a.cells();
    std::vector<std::uint32_t> identity(k);
    std::iota(identity.begin(), identity.end(), 0u);

    CutOptions cut = options.cut;
    if (options.mode == AlignMode::exact) {
        if (k > exact_align_limit) {
            throw Error(ErrorKind::resolution_too_large,
                        "exact alignment needs at most " + std::to_string(exact_align_limit) + " cells, got " +
                            std::to_string(k));
        }
        cut.mode = CutMode::exact;
    }

    AlignmentResult out{alignment_cost(a, b, identity, cut), identity, false};
    auto offer = [&](const std::vector<std::uint32_t>& perm) {
        double d = alignment_cost(a, b, perm, cut);
        if (d < out.distance) {
            out.distance = d;
            out.permutation = perm;
        }
        return d;
    };

    switch (options.mode) {
        case AlignMode::exact: {
            std::vector<std::uint32_t> perm = identity;
            while (std::next_permutation(perm.begin(), perm.end())) offer(perm);
            break;
        }
        case AlignMode::degree_sort:
        case AlignMode::local_search: {
            const auto o1 = sorted_by_degree(a);
            const auto o2 = sorted_by_degree(b);
            std::vector<std::uint32_t> perm(k);
            for (std::size_t r = 0; r < k; ++r) perm[o2[r]] = o1[r];
            double current = perm == identity ? out.distance : offer(perm);
            if (options.mode == AlignMode::local_search) {
                for (std::size_t pass = 0; pass < options.iters; ++pass) {
                    bool improved = false;
                    for (std::size_t i = 0; i < k; ++i) {
                        for (std::size_t j = i + 1; j < k; ++j) {
                            std::swap(perm[i], perm[j]);
                            double d = alignment_cost(a, b, perm, cut);
                            if (d < current) {
                                current = d;
                                improved = true;
                                if (d < out.distance) {
                                    out.distance = d;
                                    out.permutation = perm;
                                }
                            } else {
                                std::swap(perm[i], perm[j]);
                            }
                        }
                    }
                    if (!improved) break;
                }
            }
            break;
        }
    }
    out.exact = grid_exact && options.mode == AlignMode::exact;
    return out;
}

namespace {

struct StretchedStep {
    StepGraphon w;
    bool exact = true;
};

StretchedStep stretched_step(const GraphonSpec& spec, std::size_t fallback_k) {
    auto [s, tag] = stretch(spec);
    (void)tag;
    if (auto step = exact_step_form(s)) return {step->trimmed(), true};
    // exponential kernel: cut where amplitude * e^{-decay x} drops below 1e-6 of its start
    const auto& e = std::get<RankOneExp>(s.variant());
    const double cutoff = std::log(1e6) / e.decay;
    const std::size_t k = fallback_k == 0 ? 512 : fallback_k;
    return {discretize(s, k, cutoff), false};
}

}  // namespace

StretchedPair stretched_pair(const GraphonSpec& w1, const GraphonSpec& w2, std::size_t refine_k) {
    auto a = stretched_step(w1, refine_k);
    auto b = stretched_step(w2, refine_k);
    const double l1 = l1_distance(a.w, b.w);
    auto aligned = align_grids(a.w, b.w, refine_k);
    return {std::move(aligned.first), std::move(aligned.second), aligned.exact && a.exact && b.exact, l1};
}

AlignmentResult stretched_cut_distance(const GraphonSpec& w1, const GraphonSpec& w2, const AlignOptions& options) {
    auto pair = stretched_pair(w1, w2, options.refine_k);
    auto out = cut_distance_steps(pair.first, pair.second, options);
    out.exact = out.exact && pair.exact;
    return out;
}

}  // namespace sgsp
