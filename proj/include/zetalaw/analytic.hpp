#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "zetalaw/error.hpp"
#include "zetalaw/field_data.hpp"

namespace zetalaw {

using Complex = std::complex<double>;

enum class CharacterId { ChiMinus4, ChiMinus8 };

inline int character_modulus(CharacterId chi) noexcept { return chi == CharacterId::ChiMinus4 ? 4 : 8; }

// Real primitive characters attached to Q(i) and Q(sqrt(-2)).
inline int character_value(CharacterId chi, long long n) noexcept {
    const long long q = character_modulus(chi);
    long long r = n % q;
    if (r < 0) r += q;
    if (chi == CharacterId::ChiMinus4) {
        if (r == 1) return 1;
        if (r == 3) return -1;
        return 0;
    }
    if (r == 1 || r == 3) return 1;
    if (r == 5 || r == 7) return -1;
    return 0;
}

inline std::optional<CharacterId> field_character(const FieldSpec& field) noexcept {
    switch (field.id) {
    case FieldId::GaussianQi: return CharacterId::ChiMinus4;
    case FieldId::QSqrtMinus2: return CharacterId::ChiMinus8;
    case FieldId::RationalQ: break;
    }
    return std::nullopt;
}

namespace detail {

inline void require_finite(Complex s, const char* what) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw domain_error(std::string(what) + ": non-finite argument");
}

inline bool is_nonpositive_integer(Complex s) noexcept {
    return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// Lanczos approximation with Godfrey's coefficients, g = 607/128, fifteen terms.
inline constexpr double lanczos_g = 607.0 / 128.0;
inline constexpr std::array<double, 15> lanczos_coef{
    0.99999999999999709182,    57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,     -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4, 0.36899182659531622704e-5};

// B_{2j} / (2j)! for j = 1..20.
inline const std::array<double, 20>& bernoulli_over_factorial() {
    static const std::array<double, 20> table = [] {
        constexpr std::array<double, 20> b{1.0 / 6.0,
                                           -1.0 / 30.0,
                                           1.0 / 42.0,
                                           -1.0 / 30.0,
                                           5.0 / 66.0,
                                           -691.0 / 2730.0,
                                           7.0 / 6.0,
                                           -3617.0 / 510.0,
                                           43867.0 / 798.0,
                                           -174611.0 / 330.0,
                                           854513.0 / 138.0,
                                           -236364091.0 / 2730.0,
                                           8553103.0 / 6.0,
                                           -23749461029.0 / 870.0,
                                           8615841276005.0 / 14322.0,
                                           -7709321041217.0 / 510.0,
                                           2577687858367.0 / 6.0,
                                           -26315271553053477373.0 / 1919190.0,
                                           2929993913841559.0 / 6.0,
                                           -261082718496449122051.0 / 13530.0};
        std::array<double, 20> out{};
        double fact = 1.0;
        for (int j = 1; j <= 20; ++j) {
            fact *= double(2 * j - 1) * double(2 * j);
            out[j - 1] = b[j - 1] / fact;
        }
        return out;
    }();
    return table;
}

// log sin(pi z) on a branch whose exponential is sin(pi z); stable for large |Im z|.
inline Complex log_sin_pi(Complex z) {
    constexpr double pi = std::numbers::pi;
    if (std::abs(z.imag()) < 20.0) {
        const double n = std::round(z.real());
        const Complex frac{z.real() - n, z.imag()};
        Complex v = std::sin(pi * frac);
        if (std::fmod(std::abs(n), 2.0) == 1.0) v = -v;
        return std::log(v);
    }
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    const Complex i{0.0, 1.0};
    return -i * pi * z + std::log((std::exp(2.0 * i * pi * z) - 1.0) / (2.0 * i));
}

// (exp(u) - 1) / u without cancellation near u = 0.
inline Complex expm1_ratio(Complex u) {
    if (std::abs(u) < 0.5) {
        Complex sum{1.0, 0.0};
        Complex term{1.0, 0.0};
        for (int k = 2; k < 40; ++k) {
            term *= u / double(k);
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    return (std::exp(u) - 1.0) / u;
}

// x^{-s} for real x > 0; the modulus goes through pow so it is not degraded by sigma * log x.
inline Complex real_pow_neg(double x, Complex s) {
    const double phase = -s.imag() * std::log(x);
    return std::pow(x, -s.real()) * Complex{std::cos(phase), std::sin(phase)};
}

// Leading terms before the Euler-Maclaurin correction. With 20 Bernoulli terms, N >= 7 keeps the
// remainder below 1e-17 for |s| <= 50; a larger N only inflates the summands (and their
// rounding) when Re s < 0.
inline int euler_maclaurin_terms(Complex s) {
    return 7 + static_cast<int>(std::ceil(std::abs(s.imag())));
}

// Hurwitz zeta(s, a) minus its pole contribution (N + a)^{1-s} / (s - 1):
//   sum_{k<N} (k+a)^{-s} + (N+a)^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}
inline Complex hurwitz_regular(Complex s, double a, int n_terms) {
    Complex sum{0.0, 0.0};
    for (int k = 0; k < n_terms; ++k) sum += real_pow_neg(double(k) + a, s);
    const double x = double(n_terms) + a;
    sum += 0.5 * real_pow_neg(x, s);

    const auto& c = bernoulli_over_factorial();
    Complex rising = s;
    Complex x_pow = real_pow_neg(x, s + 1.0);
    const double inv_x2 = 1.0 / (x * x);
    for (int j = 1; j <= 20; ++j) {
        const Complex term = c[j - 1] * rising * x_pow;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
        x_pow *= inv_x2;
    }
    return sum;
}

} // namespace detail

/// Principal branch of log Gamma(s) (imaginary part reduced to [-pi, pi]).
///
/// Lanczos approximation for Re s >= 1/2, reflection otherwise.
inline Complex log_gamma(Complex s) {
    constexpr double pi = std::numbers::pi;
    detail::require_finite(s, "log_gamma");
    if (detail::is_nonpositive_integer(s)) throw pole_error("log_gamma: pole at nonpositive integer");

    Complex result;
    if (s.real() < 0.5) {
        result = std::log(pi) - detail::log_sin_pi(s) - log_gamma(1.0 - s);
    } else {
        const Complex z = s - 1.0;
        Complex x = detail::lanczos_coef[0];
        for (std::size_t i = 1; i < detail::lanczos_coef.size(); ++i) x += detail::lanczos_coef[i] / (z + double(i));
        const Complex t = z + detail::lanczos_g + 0.5;
        result = 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
    }
    return {result.real(), std::remainder(result.imag(), 2.0 * pi)};
}

inline Complex gamma_r(Complex s) {
    detail::require_finite(s, "gamma_r");
    if (detail::is_nonpositive_integer(s / 2.0)) throw pole_error("gamma_r: pole at s = 0, -2, -4, ...");
    return std::exp(-0.5 * s * std::log(std::numbers::pi) + log_gamma(s / 2.0));
}

inline Complex gamma_c(Complex s) {
    detail::require_finite(s, "gamma_c");
    if (detail::is_nonpositive_integer(s)) throw pole_error("gamma_c: pole at s = 0, -1, -2, ...");
    return std::exp((1.0 - s) * std::log(2.0 * std::numbers::pi) + log_gamma(s));
}

// Hurwitz zeta(s, a) for 0 < a <= 1 by Euler-Maclaurin summation.
inline Complex hurwitz_zeta(Complex s, double a) {
    detail::require_finite(s, "hurwitz_zeta");
    if (!(a > 0.0 && a <= 1.0)) throw domain_error("hurwitz_zeta: shift must lie in (0, 1]");
    if (s == Complex{1.0, 0.0}) throw pole_error("hurwitz_zeta: pole at s = 1");
    const int n = detail::euler_maclaurin_terms(s);
    const double x = double(n) + a;
    return detail::hurwitz_regular(s, a, n) + detail::real_pow_neg(x, s - 1.0) / (s - 1.0);
}

inline Complex riemann_zeta(Complex s) {
    detail::require_finite(s, "riemann_zeta");
    if (s == Complex{1.0, 0.0}) throw pole_error("riemann_zeta: pole at s = 1");
    return hurwitz_zeta(s, 1.0);
}

/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q).
///
/// The pole terms of the Hurwitz pieces cancel because sum_a chi(a) = 0; they are combined
/// analytically so the result is entire, including s = 1.
inline Complex dirichlet_l(CharacterId chi, Complex s) {
    detail::require_finite(s, "dirichlet_l");
    const int q = character_modulus(chi);
    const int n = detail::euler_maclaurin_terms(s);
    Complex regular{0.0, 0.0};
    Complex pole{0.0, 0.0};
    for (int a = 1; a < q; ++a) {
        const int c = character_value(chi, a);
        if (c == 0) continue;
        const double shift = double(a) / q;
        regular += double(c) * detail::hurwitz_regular(s, shift, n);
        // chi(a) * ((N + a/q)^{1-s} - 1) / (s - 1)
        const double x = double(n) + shift;
        const double log_x = std::log(x);
        const Complex u = (1.0 - s) * log_x;
        if (std::abs(u) < 0.5) pole -= double(c) * log_x * detail::expm1_ratio(u);
        else pole += double(c) * (detail::real_pow_neg(x, s - 1.0) - 1.0) / (s - 1.0);
    }
    return detail::real_pow_neg(double(q), s) * (regular + pole);
}

inline Complex dedekind_zeta(const FieldSpec& field, Complex s) {
    detail::require_finite(s, "dedekind_zeta");
    if (s == Complex{1.0, 0.0}) throw pole_error("dedekind_zeta: pole at s = 1");
    const Complex z = riemann_zeta(s);
    if (auto chi = field_character(field)) return z * dirichlet_l(*chi, s);
    return z;
}

namespace detail {

inline Complex completed_z_direct(const FieldSpec& field, Complex s) {
    const Complex gamma_factor = field.has_real_place() ? gamma_r(s) : gamma_c(s);
    return gamma_factor * dedekind_zeta(field, s);
}

// Negative integers where a Gamma-factor pole meets a trivial zero of zeta_K.
inline std::optional<double> removable_point_near(const FieldSpec& field, Complex s, double radius) {
    const double m = std::round(s.real());
    if (m > -1.0 || std::abs(s - Complex{m, 0.0}) >= radius) return std::nullopt;
    if (field.has_real_place() && std::fmod(-m, 2.0) != 0.0) return std::nullopt;
    return m;
}

} // namespace detail

/// Z_K(s) = Gamma_R(s)^{r1} Gamma_C(s)^{r2} zeta_K(s).
///
/// Near the cancelled Gamma poles at negative integers the value is the mean over a circle
/// of radius 1/2 (mean-value property), so the removable singularities evaluate cleanly.
inline Complex completed_z(const FieldSpec& field, Complex s) {
    detail::require_finite(s, "completed_z");
    if (s == Complex{0.0, 0.0} || s == Complex{1.0, 0.0}) throw pole_error("completed_z: pole at s = 0 or s = 1");
    if (detail::removable_point_near(field, s, 1e-2)) {
        constexpr int nodes = 64;
        constexpr double radius = 0.5;
        Complex sum{0.0, 0.0};
        for (int k = 0; k < nodes; ++k) {
            const double theta = 2.0 * std::numbers::pi * (k + 0.5) / nodes;
            sum += detail::completed_z_direct(field, s + std::polar(radius, theta));
        }
        return sum / double(nodes);
    }
    return detail::completed_z_direct(field, s);
}

namespace detail {

inline Complex xi_generic(const FieldSpec& field, Complex s) {
    return s * (s - 1.0) / field.c_k * std::exp(0.5 * s * std::log(double(field.abs_disc))) * completed_z(field, s);
}

// xi'(1) by a central difference; only feeds the first-order expansion in a 1e-8 disc.
inline double xi_slope_at_one(const FieldSpec& field) {
    constexpr double h = 1e-3;
    return (xi_generic(field, 1.0 + h) - xi_generic(field, 1.0 - h)).real() / (2.0 * h);
}

} // namespace detail

/// xi_K(s) = c_K^{-1} s (s - 1) |D|^{s/2} Z_K(s); entire with xi_K(0) = xi_K(1) = 1.
inline Complex xi(const FieldSpec& field, Complex s) {
    detail::require_finite(s, "xi");
    if (s == Complex{0.0, 0.0} || s == Complex{1.0, 0.0}) return {1.0, 0.0};
    constexpr double expansion_radius = 1e-8;
    if (std::abs(s - 1.0) < expansion_radius) return 1.0 + detail::xi_slope_at_one(field) * (s - 1.0);
    if (std::abs(s) < expansion_radius) return 1.0 - detail::xi_slope_at_one(field) * s;
    return detail::xi_generic(field, s);
}

} // namespace zetalaw
