#include "sgsp/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgsp/error.hpp"

namespace sgsp {

StepSignal::StepSignal(double support, std::vector<double> values, double bound)
    : support_(support), values_(std::move(values)) {
    if (!(support_ >= 0.0) || !std::isfinite(support_)) {
        throw Error(ErrorKind::invalid_argument, "signal support must be finite and non-negative");
    }
    double largest = 0.0;
    for (double v : values_) {
        if (!std::isfinite(v)) throw Error(ErrorKind::invalid_argument, "signal value is not finite");
        largest = std::max(largest, std::abs(v));
    }
    if (bound < 0.0) {
        bound_ = largest;
    } else {
        if (largest > bound) throw Error(ErrorKind::invalid_argument, "signal value exceeds its bound");
        bound_ = bound;
    }
}

double StepSignal::eval(double x) const noexcept {
    if (!(x >= 0.0 && x < support_)) return 0.0;
    auto i = std::min(static_cast<std::size_t>(x / cell_width()), cells() - 1);
    return values_[i];
}

double StepSignal::l1_norm() const noexcept {
    double sum = 0.0;
    for (double v : values_) sum += std::abs(v);
    return cell_width() * sum;
}

double StepSignal::l2_norm() const noexcept {
    double sum = 0.0;
    for (double v : values_) sum += v * v;
    return std::sqrt(cell_width() * sum);
}

StepSignal StepSignal::stretched(double r) const {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_argument, "stretch factor must be positive");
    StepSignal out = *this;
    out.support_ = support_ / r;
    return out;
}

StepSignal StepSignal::combine(double a, const StepSignal& other, double b) const {
    if (other.cells() != cells() || other.support_ != support_) {
        throw Error(ErrorKind::incompatible_grid, "signals live on different grids");
    }
    std::vector<double> v(cells());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * values_[i] + b * other.values_[i];
    return StepSignal(support_, std::move(v));
}

StepSignal StepSignal::scaled(double a) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= a;
    return StepSignal(support_, std::move(v));
}

StepSignal stretch_signal(const StepSignal& f, double r) { return f.stretched(r); }

StepSignal refine_to(const StepSignal& f, std::size_t k, double support) {
    if (k == 0) throw Error(ErrorKind::invalid_argument, "target grid needs at least one cell");
    if (f.cells() == k && f.support() == support) return f;
    const double w_new = support / static_cast<double>(k);
    const double ratio = f.cell_width() / w_new;
    const double q = std::round(ratio);
    const double span = f.support() / w_new;
    if (f.cells() == 0 || q < 1.0 || std::abs(ratio - q) > 1e-9 * q || std::abs(span - std::round(span)) > 1e-9 * span) {
        throw Error(ErrorKind::incompatible_grid, "signal grid (" + std::to_string(f.cells()) +
                                                      " cells) does not refine onto " + std::to_string(k) + " cells");
    }
    const auto factor = static_cast<std::size_t>(q);
    std::vector<double> v(k, 0.0);
    for (std::size_t i = 0; i < f.cells(); ++i) {
        for (std::size_t a = 0; a < factor && i * factor + a < k; ++a) v[i * factor + a] = f.values()[i];
    }
    return StepSignal(support, std::move(v), f.bound());
}

namespace {

// Calls fn(length, a_value, b_value) on each piece of the merged grid.
template <class Fn>
void merged_walk(const StepSignal& a, const StepSignal& b, Fn&& fn) {
    const double end = std::max(a.support(), b.support());
    const double wa = a.cell_width(), wb = b.cell_width();
    std::size_t i = 0, j = 0;
    double x = 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    while (x < end) {
        double na = i < a.cells() ? static_cast<double>(i + 1) * wa : inf;
        double nb = j < b.cells() ? static_cast<double>(j + 1) * wb : inf;
        double next = std::min(na, nb);
        if (next == inf) break;
        double va = i < a.cells() ? a.values()[i] : 0.0;
        double vb = j < b.cells() ? b.values()[j] : 0.0;
        if (next > x) fn(next - x, va, vb);
        x = next;
        if (na == next) ++i;
        if (nb == next) ++j;
    }
}

}  // namespace

double inner_product(const StepSignal& a, const StepSignal& b) {
    double s = 0.0;
    merged_walk(a, b, [&](double len, double u, double v) { s += len * u * v; });
    return s;
}

double l1_distance(const StepSignal& a, const StepSignal& b) {
    double s = 0.0;
    merged_walk(a, b, [&](double len, double u, double v) { s += len * std::abs(u - v); });
    return s;
}

double l2_distance(const StepSignal& a, const StepSignal& b) {
    double s = 0.0;
    merged_walk(a, b, [&](double len, double u, double v) { s += len * (u - v) * (u - v); });
    return std::sqrt(s);
}

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double profile_support(const SignalProfile& f) {
    return std::visit(overloaded{
                          [](const ConstantProfile& c) { return c.support; },
                          [](const LinearProfile& l) { return l.support; },
                          [](const ExpProfile&) { return std::numeric_limits<double>::infinity(); },
                          [](const StepSignal& s) { return s.support(); },
                      },
                      f);
}

// Integral of a smooth profile over [a, b) inside its support.
double smooth_integral(const SignalProfile& f, double a, double b) {
    return std::visit(overloaded{
                          [&](const ConstantProfile& c) { return c.value * (b - a); },
                          [&](const LinearProfile& l) {
                              return l.intercept * (b - a) + 0.5 * l.slope * (b * b - a * a);
                          },
                          [&](const ExpProfile& e) {
                              double eb = std::isinf(b) ? 0.0 : std::exp(-e.decay * b);
                              return e.amplitude / e.decay * (std::exp(-e.decay * a) - eb);
                          },
                          [&](const StepSignal&) { return 0.0; },
                      },
                      f);
}

// Point where the smooth profile equals v, or NaN.
double smooth_crossing(const SignalProfile& f, double v) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    return std::visit(overloaded{
                          [&](const ConstantProfile&) { return nan; },
                          [&](const LinearProfile& l) { return l.slope == 0.0 ? nan : (v - l.intercept) / l.slope; },
                          [&](const ExpProfile& e) {
                              double ratio = e.amplitude == 0.0 ? 0.0 : v / e.amplitude;
                              return ratio > 0.0 ? -std::log(ratio) / e.decay : nan;
                          },
                          [&](const StepSignal&) { return nan; },
                      },
                      f);
}

// Integral of |v - f| over [a, b) for a smooth profile.
double smooth_abs_gap(const SignalProfile& f, double v, double a, double b) {
    const double s = profile_support(f);
    if (a >= s) return std::isinf(b) ? (v == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()) : std::abs(v) * (b - a);
    double total = 0.0;
    if (b > s) {
        total += std::abs(v) * (b - s);
        b = s;
    }
    double c = smooth_crossing(f, v);
    auto piece = [&](double lo, double hi) {
        double len = std::isinf(hi) ? 0.0 : v * (hi - lo);
        if (std::isinf(hi) && v != 0.0) return std::numeric_limits<double>::infinity();
        return std::abs(len - smooth_integral(f, lo, hi));
    };
    if (c > a && c < b) {
        total += piece(a, c) + piece(c, b);
    } else {
        total += piece(a, b);
    }
    return total;
}

}  // namespace

double eval(const SignalProfile& f, double x) noexcept {
    if (x < 0.0) return 0.0;
    return std::visit(overloaded{
                          [&](const ConstantProfile& c) { return x < c.support ? c.value : 0.0; },
                          [&](const LinearProfile& l) { return x < l.support ? l.intercept + l.slope * x : 0.0; },
                          [&](const ExpProfile& e) { return e.amplitude * std::exp(-e.decay * x); },
                          [&](const StepSignal& s) { return s.eval(x); },
                      },
                      f);
}

SignalProfile stretch_profile(const SignalProfile& f, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::invalid_argument, "stretch factor must be positive");
    return std::visit(overloaded{
                          [&](const ConstantProfile& c) -> SignalProfile {
                              return ConstantProfile{c.value, c.support / r};
                          },
                          [&](const LinearProfile& l) -> SignalProfile {
                              return LinearProfile{l.slope * r, l.intercept, l.support / r};
                          },
                          [&](const ExpProfile& e) -> SignalProfile { return ExpProfile{e.amplitude, e.decay * r}; },
                          [&](const StepSignal& s) -> SignalProfile { return s.stretched(r); },
                      },
                      f);
}

double l1_norm(const SignalProfile& f) {
    if (const auto* s = std::get_if<StepSignal>(&f)) return s->l1_norm();
    return smooth_abs_gap(f, 0.0, 0.0, profile_support(f));
}

double l1_distance(const StepSignal& step, const SignalProfile& f) {
    if (const auto* s = std::get_if<StepSignal>(&f)) return l1_distance(step, *s);
    double total = 0.0;
    const double w = step.cell_width();
    for (std::size_t i = 0; i < step.cells(); ++i) {
        total += smooth_abs_gap(f, step.values()[i], static_cast<double>(i) * w, static_cast<double>(i + 1) * w);
    }
    const double s = profile_support(f);
    if (s > step.support()) total += smooth_abs_gap(f, 0.0, step.support(), s);
    return total;
}

}  // namespace sgsp
