#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "zetalaw/error.hpp"

namespace zetalaw {

/// Tolerances shared by every numeric integral in the library.
struct QuadratureConfig {
    double rel_tol = 1e-13;   // target error relative to the L1 norm of the integrand
    double abs_tol = 1e-14;   // absolute error accepted regardless of the L1 norm
    unsigned max_depth = 18;  // bisection depth of the adaptive Gauss-Kronrod engine
    double tail_tol = 1e-13;  // certified bound required on every discarded tail
};

namespace detail {

template <class F>
auto gauss_kronrod_31(F& f, double a, double b, unsigned depth, double tol, double& error, double& l1) {
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, depth, tol, &error, &l1);
}

[[noreturn]] inline void quadrature_failure(double a, double b, double error) {
    throw quadrature_error("integrate: tolerance not met on [" + std::to_string(a) + ", " + std::to_string(b) +
                           "], error estimate " + std::to_string(error));
}

} // namespace detail

/// Adaptive 31-point Gauss-Kronrod integral of f over [a, b]. Works for real or complex f.
///
/// Throws quadrature_error when the error estimate is still above tolerance at max depth.
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
    double error = 0.0;
    double l1 = 0.0;
    auto value = detail::gauss_kronrod_31(f, a, b, cfg.max_depth, cfg.rel_tol, error, l1);
    if (!std::isfinite(error) || error > std::max(cfg.abs_tol, cfg.rel_tol * l1)) detail::quadrature_failure(a, b, error);
    return value;
}

/// Integral over [a, b] split into pieces of at most `piece` length.
///
/// The relative tolerance is measured against the L1 norm over the whole range, so pieces
/// where the integrand is negligible are not refined down to rounding noise.
template <class F>
auto integrate_pieces(F&& f, double a, double b, double piece, const QuadratureConfig& cfg = {}) {
    const int count = std::max(1, int(std::ceil((b - a) / piece)));
    const double h = (b - a) / count;
    auto left = [&](int k) { return a + k * h; };
    auto right = [&](int k) { return k + 1 == count ? b : a + (k + 1) * h; };

    std::vector<double> l1(count);
    double total_l1 = 0.0;
    for (int k = 0; k < count; ++k) {
        double error = 0.0;
        detail::gauss_kronrod_31(f, left(k), right(k), 0, 1.0, error, l1[k]);
        total_l1 += l1[k];
    }

    decltype(integrate(f, a, b, cfg)) sum{};
    double total_error = 0.0;
    for (int k = 0; k < count; ++k) {
        if (l1[k] == 0.0) continue;
        const double tol = cfg.rel_tol * std::max(1.0, total_l1 / l1[k]);
        double error = 0.0;
        double piece_l1 = 0.0;
        sum += detail::gauss_kronrod_31(f, left(k), right(k), cfg.max_depth, tol, error, piece_l1);
        total_error += error;
    }
    if (!std::isfinite(total_error) || total_error > std::max(cfg.abs_tol, count * cfg.rel_tol * total_l1)) {
        detail::quadrature_failure(a, b, total_error);
    }
    return sum;
}

/// Upper bound for the integral over [T, inf) of v^p exp(-a v^2); needs 2 a T^2 > max(p, 0).
inline double gaussian_tail_bound(double p, double a, double T) {
    const double denom = 2.0 * a * T - std::max(p, 0.0) / T;
    if (!(denom > 0.0)) return INFINITY;
    return std::pow(T, p) * std::exp(-a * T * T) / denom;
}

/// Upper bound for the integral over [T, inf) of v^p exp(-a v); needs a T > max(p, 0).
inline double exponential_tail_bound(double p, double a, double T) {
    const double denom = a - std::max(p, 0.0) / T;
    if (!(denom > 0.0)) return INFINITY;
    return std::pow(T, p) * std::exp(-a * T) / denom;
}

} // namespace zetalaw
