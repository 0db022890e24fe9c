#include "sgsp/graphon.hpp"

#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "sgsp/error.hpp"

namespace sgsp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

GraphonSpec::GraphonSpec(ConstantBox b) : v_(b) {
    if (!(b.p >= 0.0) || !std::isfinite(b.p)) throw Error(ErrorKind::invalid_argument, "box value must be >= 0");
    if (!(b.side > 0.0) || !std::isfinite(b.side)) throw Error(ErrorKind::invalid_argument, "box side must be > 0");
}

GraphonSpec::GraphonSpec(RankOneExp e) : v_(e) {
    if (!(e.amplitude >= 0.0) || !std::isfinite(e.amplitude)) {
        throw Error(ErrorKind::invalid_argument, "amplitude must be >= 0");
    }
    if (!(e.decay > 0.0) || !std::isfinite(e.decay)) throw Error(ErrorKind::invalid_argument, "decay must be > 0");
}

double GraphonSpec::l1_norm() const noexcept {
    return std::visit(overloaded{
                          [](const StepGraphon& w) { return w.l1_norm(); },
                          [](const ConstantBox& b) { return b.p * b.side * b.side; },
                          [](const RankOneExp& e) { return e.amplitude / (e.decay * e.decay); },
                          [](const CelebrityLimit&) { return 1.0; },
                      },
                      v_);
}

double GraphonSpec::l2_norm() const noexcept {
    return std::visit(overloaded{
                          [](const StepGraphon& w) { return w.l2_norm(); },
                          [](const ConstantBox& b) { return b.p * b.side; },
                          [](const RankOneExp& e) { return e.amplitude / (2.0 * e.decay); },
                          [](const CelebrityLimit&) { return 1.0; },
                      },
                      v_);
}

double GraphonSpec::eval(double x, double y) const noexcept {
    if (x < 0.0 || y < 0.0) return 0.0;
    return std::visit(overloaded{
                          [&](const StepGraphon& w) { return w.eval(x, y); },
                          [&](const ConstantBox& b) { return (x < b.side && y < b.side) ? b.p : 0.0; },
                          [&](const RankOneExp& e) { return e.amplitude * std::exp(-e.decay * x) * std::exp(-e.decay * y); },
                          [&](const CelebrityLimit&) { return (x < 1.0 && y < 1.0) ? 1.0 : 0.0; },
                      },
                      v_);
}

double GraphonSpec::value_bound() const noexcept {
    return std::visit(overloaded{
                          [](const StepGraphon& w) { return w.value_bound(); },
                          [](const ConstantBox& b) { return b.p; },
                          [](const RankOneExp& e) { return e.amplitude; },
                          [](const CelebrityLimit&) { return 1.0; },
                      },
                      v_);
}

double GraphonSpec::support() const noexcept {
    return std::visit(overloaded{
                          [](const StepGraphon& w) { return w.support(); },
                          [](const ConstantBox& b) { return b.side; },
                          [](const RankOneExp&) { return std::numeric_limits<double>::infinity(); },
                          [](const CelebrityLimit&) { return 1.0; },
                      },
                      v_);
}

std::string GraphonSpec::describe() const {
    return std::visit(overloaded{
                          [](const StepGraphon& w) {
                              return fmt::format("step(k={}, t={:.17g})", w.cells(), w.support());
                          },
                          [](const ConstantBox& b) { return fmt::format("box(p={:.17g}, s={:.17g})", b.p, b.side); },
                          [](const RankOneExp& e) {
                              return fmt::format("exp(c={:.17g}, lambda={:.17g})", e.amplitude, e.decay);
                          },
                          [](const CelebrityLimit&) { return std::string("celebrity"); },
                      },
                      v_);
}

StepGraphon canonical_graphon(const Graph& g) {
    if (g.vertex_count() == 0) throw Error(ErrorKind::empty_graph, "canonical graphon of a graph with no vertices");
    return StepGraphon(1.0, g.adjacency(), 1.0);
}

StepGraphon normalized_graphon(const Graph& g) {
    if (g.vertex_count() == 0) throw Error(ErrorKind::empty_graph, "normalized graphon of a graph with no vertices");
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 0) {
            throw Error(ErrorKind::isolated_vertex, fmt::format("vertex {} is isolated", v));
        }
    }
    std::vector<CsrMatrix::Entry> entries;
    entries.reserve(2 * g.edge_count());
    for (auto [a, b] : g.edges()) {
        double v = 1.0 / (static_cast<double>(g.degree(a)) * static_cast<double>(g.degree(b)));
        entries.push_back({a, b, v});
        entries.push_back({b, a, v});
    }
    return StepGraphon(1.0, CsrMatrix::from_triplets(g.vertex_count(), std::move(entries)));
}

std::pair<GraphonSpec, StretchTag> stretch(const GraphonSpec& w) {
    const double l1 = w.l1_norm();
    if (!(l1 > 0.0)) throw Error(ErrorKind::zero_graphon, "cannot stretch a graphon with zero 1-norm");
    const double r = std::sqrt(l1);
    GraphonSpec out = std::visit(
        overloaded{
            [&](const StepGraphon& s) { return GraphonSpec(s.stretched(r)); },
            [&](const ConstantBox& b) {
                return r == 1.0 ? GraphonSpec(b) : GraphonSpec(ConstantBox{b.p, b.side / r});
            },
            [&](const RankOneExp& e) {
                return r == 1.0 ? GraphonSpec(e) : GraphonSpec(RankOneExp{e.amplitude, e.decay * r});
            },
            [&](const CelebrityLimit& c) { return GraphonSpec(c); },
        },
        w.variant());
    return {std::move(out), StretchTag{r}};
}

double restricted_l1_norm(const GraphonSpec& w, double t) {
    if (!(t > 0.0)) throw Error(ErrorKind::invalid_argument, "restriction length must be positive");
    return std::visit(overloaded{
                          [&](const StepGraphon& s) {
                              if (t >= s.support()) return s.l1_norm();
                              return restrict_to(GraphonSpec(s), t, s.cells()).l1_norm() * t * t;
                          },
                          [&](const ConstantBox& b) {
                              double side = std::min(b.side, t);
                              return b.p * side * side;
                          },
                          [&](const RankOneExp& e) {
                              double m = -std::expm1(-e.decay * t) / e.decay;
                              return e.amplitude * m * m;
                          },
                          [&](const CelebrityLimit&) {
                              double side = std::min(1.0, t);
                              return side * side;
                          },
                      },
                      w.variant());
}

std::optional<StepGraphon> exact_step_form(const GraphonSpec& w) {
    return std::visit(overloaded{
                          [](const StepGraphon& s) -> std::optional<StepGraphon> { return s; },
                          [](const ConstantBox& b) -> std::optional<StepGraphon> {
                              std::vector<double> v{b.p};
                              return StepGraphon::from_dense(1, b.side, v);
                          },
                          [](const RankOneExp&) -> std::optional<StepGraphon> { return std::nullopt; },
                          [](const CelebrityLimit&) -> std::optional<StepGraphon> {
                              std::vector<double> v{1.0};
                              return StepGraphon::from_dense(1, 1.0, v);
                          },
                      },
                      w.variant());
}

StepGraphon discretize(const GraphonSpec& w, std::size_t k, double support) {
    if (k == 0) throw Error(ErrorKind::invalid_argument, "discretization needs k >= 1");
    if (!(support > 0.0) || !std::isfinite(support)) {
        throw Error(ErrorKind::invalid_argument, "discretization support must be positive and finite");
    }
    if (const auto* s = w.as_step()) return s->resampled(k, support);
    const double h = support / static_cast<double>(k);
    std::vector<double> dense(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        double x = (static_cast<double>(i) + 0.5) * h;
        for (std::size_t j = 0; j <= i; ++j) {
            double y = (static_cast<double>(j) + 0.5) * h;
            double v = w.eval(x, y);
            dense[i * k + j] = v;
            dense[j * k + i] = v;
        }
    }
    return StepGraphon::from_dense(k, support, dense, w.value_bound());
}

StepGraphon restrict_to(const GraphonSpec& w, double t, std::size_t k) {
    if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorKind::invalid_argument, "restriction length must be positive");
    if (k == 0) throw Error(ErrorKind::invalid_argument, "restriction resolution k must be >= 1");
    if (const auto* s = w.as_step()) {
        const double cells = t / s->cell_width();
        const double rounded = std::round(cells);
        if (rounded >= 1.0 && std::abs(cells - rounded) <= 1e-9 * rounded) {
            auto m = static_cast<std::size_t>(rounded);
            StepGraphon cut = m <= s->cells() ? StepGraphon(t, s->values().leading(m), s->value_bound())
                                              : s->padded(m);
            return StepGraphon(1.0, cut.values(), cut.value_bound());
        }
    }
    // Midpoint sampling of W(t x, t y) on [0, 1]^2 is sampling W on [0, t]^2.
    StepGraphon sampled = discretize(w, k, t);
    return StepGraphon(1.0, sampled.values(), sampled.value_bound());
}

}  // namespace sgsp
