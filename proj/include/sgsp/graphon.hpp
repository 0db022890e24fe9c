#pragma once

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>

#include "sgsp/graph.hpp"
#include "sgsp/step_graphon.hpp"

namespace sgsp {

/// p on [0, side)^2, zero elsewhere.
struct ConstantBox {
    double p = 1.0;
    double side = 1.0;
};

/// W(x, y) = amplitude * exp(-decay x) * exp(-decay y).
struct RankOneExp {
    double amplitude = 1.0;
    double decay = 1.0;
};

/// Indicator of the unit square; the stretched limit of the celebrity graphs.
struct CelebrityLimit {};

/// A generalized graphon on R+^2: a step graphon or one of a closed set of
/// analytic families with closed-form norms.
class GraphonSpec {
public:
    using Variant = std::variant<StepGraphon, ConstantBox, RankOneExp, CelebrityLimit>;

    GraphonSpec(StepGraphon w) : v_(std::move(w)) {}
    GraphonSpec(ConstantBox b);
    GraphonSpec(RankOneExp e);
    GraphonSpec(CelebrityLimit c) : v_(c) {}

    const Variant& variant() const noexcept { return v_; }
    const StepGraphon* as_step() const noexcept { return std::get_if<StepGraphon>(&v_); }

    double l1_norm() const noexcept;
    double l2_norm() const noexcept;
    double eval(double x, double y) const noexcept;
    double value_bound() const noexcept;
    /// Side of the smallest square [0, s)^2 holding the support; +inf if none.
    double support() const noexcept;
    std::string describe() const;

private:
    Variant v_;
};

/// The factor r of a stretch W(x, y) -> W(r x, r y).
struct StretchTag {
    double factor = 1.0;
};

/// Adjacency step function of `g` on [0, 1]^2; 1 on cell (i, j) iff ij is an edge.
StepGraphon canonical_graphon(const Graph& g);
/// 1 / (d_i d_j) on edge cells.
StepGraphon normalized_graphon(const Graph& g);

/// Stretch by r = sqrt(||W||_1), giving unit 1-norm.
std::pair<GraphonSpec, StretchTag> stretch(const GraphonSpec& w);

/// Closed-form ||W 1_{[0,t]^2}||_1; exact for every variant.
double restricted_l1_norm(const GraphonSpec& w, double t);

/// W_m'(x, y) = W(t x, t y) on [0, 1]^2.
///
/// Step inputs whose grid lines hit t are cut (or zero padded) exactly and
/// keep their own resolution; analytic families and misaligned step inputs
/// are midpoint-sampled on a k x k grid.
StepGraphon restrict_to(const GraphonSpec& w, double t, std::size_t k);

/// Step form of the variants that are step functions already (steps, boxes).
std::optional<StepGraphon> exact_step_form(const GraphonSpec& w);

/// Midpoint sampling of `w` on a k x k grid over [0, support).
StepGraphon discretize(const GraphonSpec& w, std::size_t k, double support);

}  // namespace sgsp
