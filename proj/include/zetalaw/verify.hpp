#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zetalaw/analytic.hpp"
#include "zetalaw/density.hpp"
#include "zetalaw/error.hpp"
#include "zetalaw/field_data.hpp"
#include "zetalaw/quadrature.hpp"

namespace zetalaw {

struct VerificationReport {
    std::string check_name;
    std::optional<FieldId> field;
    std::vector<std::pair<std::string, double>> parameters;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

inline VerificationReport make_report(std::string name, std::optional<FieldId> field,
                                      std::vector<std::pair<std::string, double>> parameters, double residual,
                                      double tolerance) {
    // NaN residuals must fail.
    const bool passed = residual <= tolerance;
    return {std::move(name), field, std::move(parameters), residual, tolerance, passed};
}

namespace detail {

// Sum of bound(m) over m >= first, given that bound(m + 1) / bound(m) is nonincreasing in m.
// Once the ratio r drops below 1 the rest is at most bound(m) / (1 - r).
template <class Bound>
double certified_series_tail(Bound bound, long long first) {
    double sum = 0.0;
    for (long long m = first; m < first + 10'000'000; ++m) {
        const double b = bound(double(m));
        if (b == 0.0) return sum;
        const double r = bound(double(m + 1)) / b;
        if (r < 1.0 && b / (1.0 - r) < 1e-30) return sum + b / (1.0 - r);
        sum += b;
    }
    return std::numeric_limits<double>::infinity();
}

// Bound on sum_{n >= first} r_d(n) |f_C(sqrt(scale2 n))| for the complex kernel.
inline double lattice_tail_bound(double scale2, long long first) {
    constexpr double pi = std::numbers::pi;
    if (pi * scale2 * double(first) < 0.5) return std::numeric_limits<double>::infinity();
    return certified_series_tail(
        [&](double m) { return 6.0 * std::sqrt(m) * 4.0 * pi * pi * scale2 * scale2 * m * m * std::exp(-2.0 * pi * scale2 * m); },
        first);
}

// Bound on sum_{|n| >= first} |f_R(y n)| for the real kernel.
inline double theta_tail_bound(double y, long long first) {
    constexpr double pi = std::numbers::pi;
    if (2.0 * pi * y * y * double(first) * double(first) < 3.0) return std::numeric_limits<double>::infinity();
    return 2.0 * certified_series_tail(
                     [&](double m) { return 4.0 * pi * pi * std::pow(y * m, 4) * std::exp(-pi * y * y * m * m); }, first);
}

} // namespace detail

/// Archimedean zeta integral of the self-dual kernel against s(s-1) times the Gamma factor.
///
///   Real:    2 int_0^inf x^s f(x) dx/x
///   Complex: 16 pi^2 int_0^inf r^{2s+1} (pi r^2 - 1) exp(-2 pi r^2) dr
inline VerificationReport check_local_zeta(KernelKind kind, Complex s, const QuadratureConfig& cfg = {}) {
    constexpr double pi = std::numbers::pi;
    detail::require_finite(s, "check_local_zeta");
    const double sigma = s.real();
    if (!(sigma > 0.0)) throw domain_error("check_local_zeta: Re s must be positive");
    const bool real = kind == KernelKind::Real;

    // Upper cutoff from a Gaussian tail bound; lower cutoff from |f| <= C x^2 (resp. r^2) near 0.
    double upper = 2.0;
    auto upper_bound = [&](double R) {
        return real ? 4.0 * pi * pi * gaussian_tail_bound(sigma + 3.0, pi, R)
                    : 16.0 * pi * pi * pi * gaussian_tail_bound(2.0 * sigma + 3.0, 2.0 * pi, R);
    };
    while (upper_bound(upper) >= cfg.tail_tol) upper += 0.25;
    const double power = real ? sigma + 2.0 : 2.0 * sigma + 2.0;
    const double scale = real ? 2.0 * 6.0 * pi : 16.0 * pi * pi;
    const double lower = std::min(0.5, std::pow(cfg.tail_tol * power / scale, 1.0 / power));

    auto integrand = [&](double y) -> Complex {
        const double x = std::exp(y);
        if (real) return 2.0 * std::exp(s * y) * kernel_eval({KernelKind::Real}, x);
        return 16.0 * pi * pi * std::exp((2.0 * s + 2.0) * y) * (pi * x * x - 1.0) * std::exp(-2.0 * pi * x * x);
    };
    const Complex value = integrate_pieces(integrand, std::log(lower), std::log(upper), 0.5, cfg);
    const Complex expected = s * (s - 1.0) * (real ? gamma_r(s) : gamma_c(s));
    return make_report(real ? "local-zeta-real" : "local-zeta-complex", std::nullopt,
                       {{"re_s", s.real()}, {"im_s", s.imag()}, {"integral_re", value.real()}, {"integral_im", value.imag()}},
                       std::abs(value - expected), 1e-8);
}

/// Poisson self-duality of the real kernel on Z:
///   sum_{n != 0} f(y n) = y^{-1} sum_{n != 0} f(n / y).
inline VerificationReport check_theta_selfdual(double y, long long cutoff, double tolerance = 1e-10) {
    if (!(y > 0.0) || !std::isfinite(y)) throw domain_error("check_theta_selfdual: y must be positive and finite");
    if (cutoff < 1) throw domain_error("check_theta_selfdual: cutoff must be positive");
    const double tail = detail::theta_tail_bound(y, cutoff + 1) + detail::theta_tail_bound(1.0 / y, cutoff + 1) / y;
    if (!(tail <= tolerance / 10.0)) throw domain_error("check_theta_selfdual: cutoff too small for a certified tail");
    const ArchimedeanKernel f{KernelKind::Real};
    double left = 0.0;
    double right = 0.0;
    for (long long n = 1; n <= cutoff; ++n) {
        left += 2.0 * f.unchecked(y * double(n));
        right += 2.0 * f.unchecked(double(n) / y);
    }
    right /= y;
    return make_report("theta-selfdual", FieldId::RationalQ,
                       {{"y", y}, {"cutoff", double(cutoff)}, {"tail_bound", tail}, {"lhs", left}},
                       std::abs(left - right), tolerance);
}

/// Candidate normalizations of the dual-lattice side: factor |u|^exponent times or divided
/// by a covolume constant in {1, sqrt d, 2 sqrt d}.
enum class CovolumeConstant { One, SqrtD, TwoSqrtD };

struct LatticeNormalization {
    int exponent;
    CovolumeConstant constant;
    bool divide;

    [[nodiscard]] double factor(double abs_u, int d) const {
        const double c = constant == CovolumeConstant::One     ? 1.0
                         : constant == CovolumeConstant::SqrtD ? std::sqrt(double(d))
                                                               : 2.0 * std::sqrt(double(d));
        const double power = std::pow(abs_u, exponent);
        return divide ? power / c : power * c;
    }

    friend bool operator==(const LatticeNormalization&, const LatticeNormalization&) = default;
};

// Selected by calibrate_lattice_normalization(): the factor is |u|^2 / (2 sqrt d).
inline constexpr LatticeNormalization calibrated_lattice_normalization{2, CovolumeConstant::TwoSqrtD, true};

struct LatticeSums {
    double left;        // sum over O_K \ {0} of f(x l)
    double dual;        // sum over O_K^* \ {0} of f(u l*), u = 1 / x, before normalization
    double tail_bound;  // certified bound on both discarded tails, before normalization
};

namespace detail {

inline LatticeSums lattice_sums(int d, Complex x, long long cutoff) {
    const double x2 = std::norm(x);
    const double dual_scale2 = 1.0 / (x2 * 4.0 * d);  // |u l*|^2 = |u|^2 (a^2 + d b^2) / (4 d)
    const ArchimedeanKernel f{KernelKind::Complex};
    double left = 0.0;
    double dual = 0.0;
    for (long long a = -cutoff; a <= cutoff; ++a) {
        for (long long b = -cutoff; b <= cutoff; ++b) {
            if (a == 0 && b == 0) continue;
            const double n = double(a * a + d * b * b);
            left += f.unchecked(std::sqrt(x2 * n));
            dual += f.unchecked(std::sqrt(dual_scale2 * n));
        }
    }
    // Every point with a^2 + d b^2 <= cutoff^2 lies in the enumerated box.
    const long long first = cutoff * cutoff + 1;
    return {left, dual, std::max(lattice_tail_bound(x2, first), lattice_tail_bound(dual_scale2, first))};
}

} // namespace detail

/// Poisson self-duality of the complex kernel on O_K = Z + sqrt(-d) Z against its trace dual
/// O_K^* = (2 sqrt(-d))^{-1} O_K, with the dual side scaled by `norm`.
inline VerificationReport check_lattice_selfdual(const FieldSpec& field, Complex x, long long cutoff,
                                                 LatticeNormalization norm = calibrated_lattice_normalization,
                                                 double tolerance = 1e-9) {
    if (field.r2 != 1) throw domain_error("check_lattice_selfdual: field must have a complex place");
    if (x == Complex{0.0, 0.0} || !std::isfinite(std::abs(x))) throw domain_error("check_lattice_selfdual: x must be nonzero");
    if (cutoff < 1) throw domain_error("check_lattice_selfdual: cutoff must be positive");
    const auto sums = detail::lattice_sums(field.lattice_d, x, cutoff);
    const double abs_u = 1.0 / std::abs(x);
    const double factor = norm.factor(abs_u, field.lattice_d);
    const double tail = sums.tail_bound * std::max(1.0, factor);
    if (!(tail <= tolerance / 10.0)) throw domain_error("check_lattice_selfdual: cutoff too small for a certified tail");
    return make_report("lattice-selfdual", field.id,
                       {{"abs_x", std::abs(x)}, {"cutoff", double(cutoff)}, {"tail_bound", tail}, {"lhs", sums.left}},
                       std::abs(sums.left - factor * sums.dual), tolerance);
}

/// Scaling points used to pin the dual-lattice normalization.
inline std::vector<std::pair<FieldId, Complex>> lattice_calibration_points() {
    return {{FieldId::GaussianQi, {1.0, 0.0}},
            {FieldId::GaussianQi, {0.6, 0.5}},
            {FieldId::QSqrtMinus2, {1.3, 0.0}},
            {FieldId::QSqrtMinus2, {0.0, 0.7}},
            {FieldId::QSqrtMinus2, {1.1, -0.9}}};
}

/// Tries every candidate normalization at the calibration points and returns the unique one
/// whose residual is below `tolerance` at all of them, or nothing when zero or several qualify.
inline std::optional<LatticeNormalization> calibrate_lattice_normalization(long long cutoff = 40, double tolerance = 1e-9) {
    std::vector<LatticeNormalization> winners;
    for (int exponent : {1, 2}) {
        for (auto constant : {CovolumeConstant::One, CovolumeConstant::SqrtD, CovolumeConstant::TwoSqrtD}) {
            for (bool divide : {false, true}) {
                const LatticeNormalization candidate{exponent, constant, divide};
                bool all = true;
                for (const auto& [id, x] : lattice_calibration_points()) {
                    const auto field = field_spec(id);
                    const auto sums = detail::lattice_sums(field.lattice_d, x, cutoff);
                    const double residual = std::abs(sums.left - candidate.factor(1.0 / std::abs(x), field.lattice_d) * sums.dual);
                    if (!(residual < tolerance)) {
                        all = false;
                        break;
                    }
                }
                if (all) winners.push_back(candidate);
            }
        }
    }
    if (winners.size() != 1) return std::nullopt;
    return winners.front();
}

/// For |u|^2 >= pi every dual term f(u l*) has pi |u l*|^2 - 1 >= pi^2 / (4 d) - 1 > 0.
/// Reports the smallest margin pi |u|^2 |l*|^2 - 1 over the enumerated nonzero dual points.
inline VerificationReport check_dual_positivity(const FieldSpec& field, double abs_u, long long cutoff) {
    constexpr double pi = std::numbers::pi;
    if (field.r2 != 1) throw domain_error("check_dual_positivity: field must have a complex place");
    if (!(abs_u * abs_u >= pi * (1.0 - 1e-12))) throw domain_error("check_dual_positivity: needs |u|^2 >= pi");
    const int d = field.lattice_d;
    double min_margin = std::numeric_limits<double>::infinity();
    for (long long a = -cutoff; a <= cutoff; ++a)
        for (long long b = -cutoff; b <= cutoff; ++b)
            if (a != 0 || b != 0) {
                const double dual_norm = double(a * a + d * b * b) / (4.0 * d);
                min_margin = std::min(min_margin, pi * abs_u * abs_u * dual_norm - 1.0);
            }
    const double bound = pi * pi / (4.0 * d) - 1.0;
    const double residual = bound > 0.0 ? std::max(0.0, bound - min_margin) : INFINITY;
    return make_report("dual-positivity", field.id, {{"abs_u", abs_u}, {"min_margin", min_margin}, {"bound", bound}},
                       residual, 1e-12);
}

/// Evaluates psi on the grid and certifies each point by a representation whose terms are all
/// nonnegative: the direct series if possible, otherwise the flipped one.
inline VerificationReport check_positivity_mechanism(const FieldSpec& field, const std::vector<double>& grid,
                                                     double tolerance = 1e-12) {
    if (grid.empty()) throw domain_error("check_positivity_mechanism: empty grid");
    const DensityModel model(field.id);
    double min_psi = std::numeric_limits<double>::infinity();
    double by_direct = 0.0;
    double by_flip = 0.0;
    double uncertified = 0.0;
    for (double t : grid) {
        min_psi = std::min(min_psi, model(t));
        if (model.direct_terms_nonnegative(t)) by_direct += 1.0;
        else if (model.direct_terms_nonnegative(1.0 / (field.abs_disc * t))) by_flip += 1.0;
        else uncertified += 1.0;
    }
    const double residual = uncertified > 0.0 ? INFINITY : std::max(0.0, -min_psi);
    return make_report("positivity", field.id,
                       {{"points", double(grid.size())}, {"min_psi", min_psi}, {"certified_direct", by_direct},
                        {"certified_flipped", by_flip}, {"uncertified", uncertified}},
                       residual, tolerance);
}

/// n points spaced evenly in log t over [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = n == 1 ? lo : lo * std::pow(hi / lo, double(i) / (n - 1));
    return grid;
}

} // namespace zetalaw
