#pragma once

// Adaptive Gauss(7)/Kronrod(15) quadrature over a finite interval, with an
// optional list of interior knots used to seed the first subdivision.

#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "ordgap/defaults.hpp"
#include "ordgap/errors.hpp"

namespace ordgap {

// Tolerances and truncation policy shared by every integral-backed operation.
struct QuadratureConfig {
    double rel_tol = defaults::kRelTol;
    double abs_tol = defaults::kAbsTol;
    double tail_mass = defaults::kTailMass;  // dropped at an unbounded endpoint
    int max_subdivisions = defaults::kMaxSubdivisions;
};

inline void validate(const QuadratureConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || !(cfg.tail_mass > 0.0))
        throw DomainError("quadrature config: tolerances must be positive");
    if (!(cfg.tail_mass < 1e-3))
        throw DomainError("quadrature config: tail_mass must be below 1e-3");
    if (cfg.max_subdivisions < 1)
        throw DomainError("quadrature config: max_subdivisions must be positive");
}

struct QuadResult {
    double value = 0.0;
    double err = 0.0;
    int panels = 0;
};

namespace gk {

// Kronrod-15 nodes and weights on [-1,1] (positive half; node 7 is the center).
// Odd-indexed nodes carry the embedded Gauss-7 rule.
inline constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr double kWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a = 0, b = 0;
    double value = 0;
    double err = 0;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel evaluate(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    if (!std::isfinite(fc)) throw EvalError("integrand returned a non-finite value");
    double k15 = kWeights[7] * fc;
    double g7 = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kNodes[i];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        if (!std::isfinite(f1) || !std::isfinite(f2))
            throw EvalError("integrand returned a non-finite value");
        const double pair = f1 + f2;
        k15 += kWeights[i] * pair;
        if (i % 2 == 1) g7 += kGaussWeights[i / 2] * pair;
    }
    return Panel{a, b, h * k15, h * std::fabs(k15 - g7)};
}

}  // namespace gk

// Integrates f over [a, b]. interior_knots (ascending) pre-split the interval;
// knots outside (a, b) are ignored. Throws QuadratureError when the panel
// budget is exhausted before the tolerance is met.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double rel_tol, double abs_tol,
                              int max_subdivisions, std::span<const double> interior_knots = {}) {
    QuadResult out;
    if (!(a < b)) return out;

    std::priority_queue<gk::Panel> heap;
    long double total = 0.0L;
    long double total_err = 0.0L;
    long double frozen_err = 0.0L;
    int panels = 0;

    auto push = [&](double lo, double hi) {
        gk::Panel p = gk::evaluate(f, lo, hi);
        total += p.value;
        total_err += p.err;
        ++panels;
        heap.push(p);
    };

    double prev = a;
    for (double knot : interior_knots) {
        if (knot > prev && knot < b) {
            push(prev, knot);
            prev = knot;
        }
    }
    push(prev, b);

    while (true) {
        const double tol =
            std::max(abs_tol, rel_tol * std::fabs(static_cast<double>(total)));
        if (static_cast<double>(total_err + frozen_err) <= tol) break;
        if (heap.empty() || panels + 2 > max_subdivisions)
            throw QuadratureError("adaptive quadrature did not converge within the panel budget");

        gk::Panel worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.err;

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Interval is at floating-point resolution; keep its estimate as-is.
            total += worst.value;
            frozen_err += worst.err;
            continue;
        }
        push(worst.a, mid);
        push(mid, worst.b);
    }

    out.value = static_cast<double>(total);
    out.err = static_cast<double>(total_err + frozen_err);
    out.panels = panels;
    return out;
}

}  // namespace ordgap
