#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "zetalaw/analytic.hpp"
#include "zetalaw/error.hpp"
#include "zetalaw/field_data.hpp"
#include "zetalaw/quadrature.hpp"

namespace zetalaw {

namespace detail {

inline std::int64_t isqrt(std::int64_t n) {
    auto r = static_cast<std::int64_t>(std::sqrt(double(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// #{(a, b) : a^2 + d b^2 = n} by scanning b and testing n - d b^2 for a perfect square.
inline std::int64_t count_representations(int d, std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t b = 0; d * b * b <= n; ++b) {
        const std::int64_t rest = n - d * b * b;
        const std::int64_t a = isqrt(rest);
        if (a * a != rest) continue;
        count += (a == 0 ? 1 : 2) * (b == 0 ? 1 : 2);
    }
    return count;
}

} // namespace detail

/// r_d(n) for 1 <= n <= max_n, filled once at construction and read-only afterwards.
class RepCountTable {
public:
    RepCountTable(int d, std::int64_t max_n) : d_(d), counts_(std::size_t(max_n) + 1, 0) {
        if (d != 1 && d != 2) throw domain_error("RepCountTable: lattice parameter must be 1 or 2");
        for (std::int64_t n = 1; n <= max_n; ++n) counts_[n] = detail::count_representations(d, n);
    }

    [[nodiscard]] int d() const noexcept { return d_; }
    [[nodiscard]] std::int64_t max_n() const noexcept { return std::int64_t(counts_.size()) - 1; }
    [[nodiscard]] std::int64_t operator[](std::int64_t n) const { return counts_.at(std::size_t(n)); }

private:
    int d_;
    std::vector<std::int64_t> counts_;
};

namespace detail {

inline constexpr std::int64_t rep_cache_size = 8192;

inline const RepCountTable& shared_rep_table(int d) {
    static const RepCountTable one(1, rep_cache_size);
    static const RepCountTable two(2, rep_cache_size);
    return d == 1 ? one : two;
}

} // namespace detail

/// Number of (a, b) in Z^2 with a^2 + d b^2 = n, for d in {1, 2} and n >= 1.
inline std::int64_t rep_count(int d, std::int64_t n) {
    if (d != 1 && d != 2) throw domain_error("rep_count: d must be 1 or 2");
    if (n < 1) throw domain_error("rep_count: n must be positive");
    if (n <= detail::rep_cache_size) return detail::shared_rep_table(d)[n];
    return detail::count_representations(d, n);
}

/// Density psi_K of the variable X with E[X^s] = |D|^{-s/2} xi_K(s), as a lattice sum.
///
///   Q:         psi(t) = 4 pi sum_{n>=1} n^2 t (2 pi n^2 t^2 - 3) exp(-pi n^2 t^2)
///   quadratic: psi(t) = sum_{n>=1} r_d(n) 4 pi n (pi t n - 1) exp(-2 pi t n)
///
/// Both satisfy psi(t) = (sqrt|D| t)^{-3} psi(1 / (|D| t)). When sqrt|D| t < flip_point the
/// value is taken from the right-hand side, so the direct series is only summed at arguments
/// where it converges quickly. Truncation stops once a certified bound on the remaining terms
/// is below truncation_eps / 10.
class DensityModel {
public:
    explicit DensityModel(FieldId id, double truncation_eps = 1e-15, double flip_point = 1.0)
        : field_(field_spec(id)), kernel_(kernel_for(field_)), eps_(truncation_eps), flip_(flip_point) {
        if (!(truncation_eps > 0.0 && truncation_eps <= 1e-8)) {
            throw domain_error("DensityModel: truncation_eps must lie in (0, 1e-8]");
        }
        if (!(flip_point >= 0.5 && flip_point <= 2.0)) throw domain_error("DensityModel: flip_point must lie in [0.5, 2]");
    }

    [[nodiscard]] const FieldSpec& field() const noexcept { return field_; }
    [[nodiscard]] ArchimedeanKernel kernel() const noexcept { return kernel_; }
    [[nodiscard]] double truncation_eps() const noexcept { return eps_; }
    [[nodiscard]] double flip_point() const noexcept { return flip_; }

    // Argument where the two representations are exchanged by the flip: sqrt|D| t = 1.
    [[nodiscard]] double self_dual_point() const noexcept { return 1.0 / field_.sqrt_abs_disc(); }

    [[nodiscard]] double operator()(double t) const {
        check_argument(t);
        return field_.sqrt_abs_disc() * t < flip_ ? flipped(t) : direct(t);
    }

    /// Direct lattice sum with certified truncation.
    [[nodiscard]] double direct(double t) const {
        check_argument(t);
        return field_.has_real_place() ? direct_rational(t) : direct_quadratic(t);
    }

    /// (sqrt|D| t)^{-3} times the direct sum at 1 / (|D| t).
    [[nodiscard]] double flipped(double t) const {
        check_argument(t);
        const double u = field_.sqrt_abs_disc() * t;
        return direct(1.0 / (field_.abs_disc * t)) / (u * u * u);
    }

    /// True when every summand of the direct series at t is >= 0.
    [[nodiscard]] bool direct_terms_nonnegative(double t) const noexcept {
        constexpr double pi = std::numbers::pi;
        return field_.has_real_place() ? t * t >= 3.0 / (2.0 * pi) : pi * t >= 1.0;
    }

    /// Certified bound on the integral of v^sigma |psi(v)| over [T, inf), T >= 1.
    [[nodiscard]] double upper_tail_bound(double sigma, double T) const {
        constexpr double pi = std::numbers::pi;
        if (T < 1.0) throw domain_error("upper_tail_bound: T must be >= 1");
        if (field_.has_real_place()) {
            double b = 0.0;
            for (int n = 1; n <= 8; ++n) b += std::pow(n, 4) * std::exp(-pi * (n * n - 1.0));
            return 8.0 * pi * pi * b * gaussian_tail_bound(sigma + 3.0, pi, T);
        }
        double a = 0.0;
        for (int n = 1; n <= 40; ++n) a += std::pow(n, 2.5) * std::exp(-2.0 * pi * (n - 1.0));
        return 24.0 * pi * pi * a * exponential_tail_bound(sigma + 1.0, 2.0 * pi, T);
    }

    /// Smallest T >= 2 on a 1/4 grid with upper_tail_bound(sigma, T) below tol.
    [[nodiscard]] double upper_cutoff(double sigma, double tol) const {
        double T = 2.0;
        while (upper_tail_bound(sigma, T) >= tol) {
            T += 0.25;
            if (T > 1e4) throw quadrature_error("upper_cutoff: no finite cutoff reaches the tolerance");
        }
        return T;
    }

    // Length beyond a point after which the density has dropped by far more than 1e-16.
    [[nodiscard]] double decay_width() const noexcept { return field_.has_real_place() ? 4.0 : 6.0; }

private:
    static void check_argument(double t) {
        if (!std::isfinite(t) || t <= 0.0) throw domain_error("density argument must be positive and finite");
    }

    static constexpr long long max_terms = 10'000'000;

    double direct_rational(double t) const {
        constexpr double pi = std::numbers::pi;
        const double t2 = t * t;
        auto bound = [&](double m) { return 8.0 * pi * pi * std::pow(m, 4) * t2 * t * std::exp(-pi * m * m * t2); };
        double sum = 0.0;
        for (long long n = 1; n < max_terms; ++n) {
            const double n2 = double(n) * double(n);
            sum += n2 * t * (2.0 * pi * n2 * t2 - 3.0) * std::exp(-pi * n2 * t2);
            // Tail terms from n+1 on are dominated by bound(m), whose ratio is decreasing in m.
            const double m = double(n + 1);
            if (2.0 * pi * m * m * t2 < 3.0) continue;
            const double ratio = std::pow(1.0 + 1.0 / m, 4) * std::exp(-pi * t2 * (2.0 * m + 1.0));
            if (ratio < 0.5 && 2.0 * bound(m) < eps_ / 10.0) return 4.0 * pi * sum;
        }
        throw domain_error("density: argument too small for the direct series");
    }

    double direct_quadratic(double t) const {
        constexpr double pi = std::numbers::pi;
        const int d = field_.lattice_d;
        auto bound = [&](double m) { return 24.0 * pi * pi * t * std::pow(m, 2.5) * std::exp(-2.0 * pi * t * m); };
        double sum = 0.0;
        for (long long n = 1; n < max_terms; ++n) {
            const double x = pi * t * double(n);
            sum += double(rep_count(d, n)) * double(n) * (x - 1.0) * std::exp(-2.0 * x);
            // r_d(m) <= 6 sqrt(m) and |pi t m - 1| <= pi t m once pi t m >= 1/2.
            const double m = double(n + 1);
            if (pi * t * m < 0.5) continue;
            const double ratio = std::pow(1.0 + 1.0 / m, 2.5) * std::exp(-2.0 * pi * t);
            if (ratio < 0.5 && 2.0 * bound(m) < eps_ / 10.0) return 4.0 * pi * sum;
        }
        throw domain_error("density: argument too small for the direct series");
    }

    FieldSpec field_;
    ArchimedeanKernel kernel_;
    double eps_;
    double flip_;
};

inline double density(const DensityModel& model, double t) { return model(t); }

/// Density of Y = sqrt|D| X: psi_Y(u) = |D|^{-1/2} psi(|D|^{-1/2} u).
inline double scaled_density(const DensityModel& model, double u) {
    const double root = model.field().sqrt_abs_disc();
    return model(u / root) / root;
}

/// Integral of weight(t) psi(t) over (0, inf), done in the variable x = log t.
///
/// The caller promises |weight(t)| <= t^sigma_hi for t >= 1 and |weight(t)| <= t^sigma_lo for
/// t <= 1; these exponents select cutoffs whose certified tail bounds are below cfg.tail_tol.
template <class Weight>
auto integrate_weighted(const DensityModel& model, Weight weight, double sigma_hi, double sigma_lo,
                        const QuadratureConfig& cfg = {}) {
    const double abs_disc = model.field().abs_disc;
    const double upper = model.upper_cutoff(sigma_hi, cfg.tail_tol);
    // The lower tail maps onto an upper tail: int_0^a t^sigma psi = |D|^{1/2-sigma} int_{1/(|D| a)}^inf v^{1-sigma} psi.
    const double scale = std::pow(abs_disc, 0.5 - sigma_lo);
    const double lower = 1.0 / (abs_disc * model.upper_cutoff(1.0 - sigma_lo, cfg.tail_tol / std::max(scale, 1.0)));
    auto integrand = [&](double x) {
        const double t = std::exp(x);
        return weight(t) * (t * model(t));
    };
    return integrate_pieces(integrand, std::log(lower), std::log(upper), 0.5, cfg);
}

/// Numeric Mellin transform: integral of t^s psi(t) dt over (0, inf), i.e. E[X^s].
inline Complex mellin(const DensityModel& model, Complex s, const QuadratureConfig& cfg = {}) {
    detail::require_finite(s, "mellin");
    if (s.imag() == 0.0) {
        const double sigma = s.real();
        return integrate_weighted(model, [sigma](double t) { return std::pow(t, sigma); }, sigma, sigma, cfg);
    }
    return integrate_weighted(model, [s](double t) { return std::exp(s * std::log(t)); }, s.real(), s.real(), cfg);
}

namespace detail {

// Integral of v^power psi(v) over [from, inf), with the upper end extended far enough to keep
// relative accuracy when the integral itself is tiny.
inline double upper_integral(const DensityModel& model, double from, double power, const QuadratureConfig& cfg) {
    const double upper = std::max(model.upper_cutoff(power, cfg.tail_tol), from + model.decay_width());
    auto integrand = [&](double x) {
        const double v = std::exp(x);
        return std::pow(v, power + 1.0) * model(v);
    };
    return integrate_pieces(integrand, std::log(from), std::log(upper), 0.5, cfg);
}

} // namespace detail

/// P(X <= t). Below the self-dual point it is sqrt|D| times the integral of v psi(v) over
/// [1/(|D| t), inf); above it, one minus the upper tail.
inline double density_cdf(const DensityModel& model, double t, const QuadratureConfig& cfg = {}) {
    if (!std::isfinite(t) || t <= 0.0) throw domain_error("density_cdf: t must be positive and finite");
    if (t <= model.self_dual_point()) {
        const double abs_disc = model.field().abs_disc;
        return std::min(1.0, std::sqrt(abs_disc) * detail::upper_integral(model, 1.0 / (abs_disc * t), 1.0, cfg));
    }
    return std::max(0.0, 1.0 - detail::upper_integral(model, t, 0.0, cfg));
}

/// P(X > t), accurate in the upper tail.
inline double density_sf(const DensityModel& model, double t, const QuadratureConfig& cfg = {}) {
    if (!std::isfinite(t) || t <= 0.0) throw domain_error("density_sf: t must be positive and finite");
    if (t <= model.self_dual_point()) return 1.0 - density_cdf(model, t, cfg);
    return std::min(1.0, detail::upper_integral(model, t, 0.0, cfg));
}

} // namespace zetalaw
