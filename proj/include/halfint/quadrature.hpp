#pragma once
// Adaptive Gauss-Legendre quadrature for real and complex-valued integrands.
//
// The workhorse is a 15/30-point Gauss pair on each panel: a panel is accepted
// when the two estimates agree to the requested tolerance, otherwise it is
// bisected.  Works for smooth integrands with mild oscillation; callers are
// expected to substitute away endpoint singularities (the library's special
// functions all do).
#include <functional>
#include <vector>
#include <cmath>
#include <cstddef>

#include "halfint/numeric.hpp"

namespace halfint {

// Nodes/weights for n-point Gauss-Legendre on [-1,1]; cached per n.
const std::vector<double>& gauss_nodes(int n);
const std::vector<double>& gauss_weights(int n);

namespace detail {

template <typename F, typename R>
R panel_gauss(const F& f, double a, double b, int n) {
    const auto& xs = gauss_nodes(n);
    const auto& ws = gauss_weights(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    R acc = R(0);
    for (int i = 0; i < n; ++i) acc += R(ws[i]) * f(mid + half * xs[i]);
    return acc * R(half);
}

template <typename F, typename R>
void adapt(const F& f, double a, double b, double tol, int depth, R& total,
           double& err_acc, int max_depth) {
    R coarse = panel_gauss<F, R>(f, a, b, 15);
    R fine = panel_gauss<F, R>(f, a, b, 30);
    double err = std::abs(fine - coarse);
    if (err <= tol || depth >= max_depth) {
        total += fine;
        err_acc += err;
        return;
    }
    double m = 0.5 * (a + b);
    adapt<F, R>(f, a, m, 0.5 * tol, depth + 1, total, err_acc, max_depth);
    adapt<F, R>(f, m, b, 0.5 * tol, depth + 1, total, err_acc, max_depth);
}

} // namespace detail

struct QuadResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
};

// Adaptive integration of a complex-valued f over the finite interval [a,b].
template <typename F>
QuadResult integrate(const F& f, double a, double b, double tol = 1e-12,
                     int max_depth = 18) {
    QuadResult r;
    if (a == b) return r;
    Complex total(0.0, 0.0);
    double err = 0.0;
    auto fc = [&](double x) { return Complex(f(x)); };
    detail::adapt<decltype(fc), Complex>(fc, a, b, tol, 0, total, err, max_depth);
    r.value = total;
    r.error_estimate = err;
    return r;
}

// Real-valued convenience wrapper.
template <typename F>
double integrate_real(const F& f, double a, double b, double tol = 1e-12,
                      int max_depth = 18) {
    return integrate([&](double x) { return Complex(f(x), 0.0); }, a, b, tol,
                     max_depth).value.real();
}

// Integrate f over [a, infinity) for integrands decaying at least
// exponentially past some scale: marches panels of growing width until the
// last panel contributes below tol * (accumulated scale), then adds a
// same-size continuation as the tail estimate.
template <typename F>
QuadResult integrate_to_inf(const F& f, double a, double tol = 1e-12,
                            double first_width = 1.0, int max_panels = 400) {
    QuadResult r;
    double lo = a, w = first_width;
    double scale = 0.0;
    int idle = 0;
    for (int p = 0; p < max_panels; ++p) {
        QuadResult piece = integrate(f, lo, lo + w, tol * 0.1);
        r.value += piece.value;
        r.error_estimate += piece.error_estimate;
        scale = std::max(scale, std::abs(r.value));
        if (std::abs(piece.value) <= tol * std::max(scale, 1e-300)) {
            if (++idle >= 2) {
                r.error_estimate += std::abs(piece.value); // tail allowance
                return r;
            }
        } else {
            idle = 0;
        }
        lo += w;
        if (p >= 4) w *= 1.25; // widen panels once past the core
    }
    throw precision_error("integrate_to_inf: no decay detected within panel budget");
}

} // namespace halfint
