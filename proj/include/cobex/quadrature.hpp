#pragma once

#include <cmath>

namespace cobex {

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double c, double fc,
                    double whole, double tol, int depth) {
    const double lm = 0.5 * (a + c);
    const double rm = 0.5 * (c + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (c - a) / 6.0 * (fa + 4.0 * flm + fc);
    const double right = (b - c) / 6.0 * (fc + 4.0 * frm + fb);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
    return simpson_step(f, a, fa, c, fc, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, c, fc, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance.
/// Single-threaded recursion with a fixed split order, so results are
/// stable across runs.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 50) {
    const double c = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fc = f(c);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    return detail::simpson_step(f, a, fa, b, fb, c, fc, whole, abs_tol, max_depth);
}

}  // namespace cobex
