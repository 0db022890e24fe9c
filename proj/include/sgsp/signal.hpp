#pragma once

#include <limits>
#include <span>
#include <variant>
#include <vector>

namespace sgsp {

/// Piecewise-constant function on [0, t) with k equal steps, zero beyond t.
class StepSignal {
public:
    StepSignal() = default;
    /// `bound < 0` means "use the largest |value|".
    StepSignal(double support, std::vector<double> values, double bound = -1.0);

    std::size_t cells() const noexcept { return values_.size(); }
    double support() const noexcept { return support_; }
    double cell_width() const noexcept {
        return values_.empty() ? 0.0 : support_ / static_cast<double>(values_.size());
    }
    double bound() const noexcept { return bound_; }
    std::span<const double> values() const noexcept { return values_; }

    double eval(double x) const noexcept;
    double l1_norm() const noexcept;
    double l2_norm() const noexcept;

    /// f(r x).
    StepSignal stretched(double r) const;
    /// a * this + b * other on a shared grid.
    StepSignal combine(double a, const StepSignal& other, double b) const;
    StepSignal scaled(double a) const;

    friend bool operator==(const StepSignal&, const StepSignal&) = default;

private:
    double support_ = 0.0;
    std::vector<double> values_;
    double bound_ = 0.0;
};

/// Stretch of a signal by an explicit factor: support t -> t / r.
StepSignal stretch_signal(const StepSignal& f, double r);

/// Re-expresses `f` on a k-cell grid over [0, support) when every old grid
/// line is a new grid line (exact); throws incompatible_grid otherwise.
StepSignal refine_to(const StepSignal& f, std::size_t k, double support);

/// Exact integrals over the merged breakpoints of two arbitrary grids.
double inner_product(const StepSignal& a, const StepSignal& b);
double l1_distance(const StepSignal& a, const StepSignal& b);
double l2_distance(const StepSignal& a, const StepSignal& b);

/// c on [0, support).
struct ConstantProfile {
    double value = 0.0;
    double support = std::numeric_limits<double>::infinity();
};
/// intercept + slope * x on [0, support).
struct LinearProfile {
    double slope = 1.0;
    double intercept = 0.0;
    double support = std::numeric_limits<double>::infinity();
};
/// amplitude * exp(-decay x) on [0, inf).
struct ExpProfile {
    double amplitude = 1.0;
    double decay = 1.0;
};

/// Signal on R+ given in closed form or as a step function.
using SignalProfile = std::variant<ConstantProfile, LinearProfile, ExpProfile, StepSignal>;

double eval(const SignalProfile& f, double x) noexcept;
SignalProfile stretch_profile(const SignalProfile& f, double r);
double l1_norm(const SignalProfile& f);
/// Exact ||step - f||_1 over R+.
double l1_distance(const StepSignal& step, const SignalProfile& f);

}  // namespace sgsp
