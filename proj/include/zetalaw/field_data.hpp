#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "zetalaw/error.hpp"

namespace zetalaw {

// The three fields with a single archimedean place for which the density is known to be nonnegative.
enum class FieldId { RationalQ, GaussianQi, QSqrtMinus2 };

inline constexpr std::array<FieldId, 3> all_fields{FieldId::RationalQ, FieldId::GaussianQi,
                                                   FieldId::QSqrtMinus2};

/// Arithmetic constants of one supported field.
///
/// `lattice_d` encodes the ring of integers as Z + sqrt(-d) Z; it is 0 for Q, where the lattice
/// is Z inside R. Code that needs to distinguish real from complex archimedean places must test
/// `r1`/`r2`, never `lattice_d`.
struct FieldSpec {
    FieldId id;
    int discriminant;
    int abs_disc;
    int r1;
    int r2;
    int roots_of_unity;
    int class_number;
    double regulator;
    double c_k;
    int lattice_d;

    [[nodiscard]] bool has_real_place() const noexcept { return r1 == 1; }
    [[nodiscard]] double sqrt_abs_disc() const noexcept { return std::sqrt(double(abs_disc)); }
};

namespace detail {

inline double residue_constant(int r1, int r2, int h, double regulator, int w) {
    return std::pow(2.0, r1) * std::pow(2.0 * std::numbers::pi, r2) * h * regulator / w;
}

inline FieldSpec make_field_spec(FieldId id) {
    constexpr double pi = std::numbers::pi;
    FieldSpec f{};
    switch (id) {
    case FieldId::RationalQ:
        f = {id, 1, 1, 1, 0, 2, 1, 1.0, 1.0, 0};
        break;
    case FieldId::GaussianQi:
        f = {id, -4, 4, 0, 1, 4, 1, 1.0, pi / 2.0, 1};
        break;
    case FieldId::QSqrtMinus2:
        f = {id, -8, 8, 0, 1, 2, 1, 1.0, pi, 2};
        break;
    }
    const double formula = residue_constant(f.r1, f.r2, f.class_number, f.regulator, f.roots_of_unity);
    if (std::abs(formula - f.c_k) > 1e-15 * f.c_k || f.r1 + f.r2 != 1 ||
        (f.r2 == 1 && f.abs_disc != 4 * f.lattice_d)) {
        throw std::logic_error("inconsistent field constants");
    }
    return f;
}

} // namespace detail

inline FieldSpec field_spec(FieldId id) {
    static const std::array<FieldSpec, 3> table{detail::make_field_spec(FieldId::RationalQ),
                                                detail::make_field_spec(FieldId::GaussianQi),
                                                detail::make_field_spec(FieldId::QSqrtMinus2)};
    return table[static_cast<std::size_t>(id)];
}

inline std::string_view field_name(FieldId id) {
    switch (id) {
    case FieldId::RationalQ: return "Q";
    case FieldId::GaussianQi: return "Qi";
    case FieldId::QSqrtMinus2: return "Q2";
    }
    return "?";
}

// Accepts the short names Q, Qi, Q2 and the long aliases rationals, gaussian, sqrt-minus-2.
inline std::optional<FieldId> parse_field(std::string_view name) {
    if (name == "Q" || name == "rationals") return FieldId::RationalQ;
    if (name == "Qi" || name == "gaussian") return FieldId::GaussianQi;
    if (name == "Q2" || name == "sqrt-minus-2") return FieldId::QSqrtMinus2;
    return std::nullopt;
}

enum class KernelKind { Real, Complex };

/// Self-dual archimedean test function, radial in the archimedean variable.
///
/// Real:    2 pi x^2 (2 pi x^2 - 3) exp(-pi x^2)
/// Complex: 4 pi r^2 (pi r^2 - 1) exp(-2 pi r^2)
struct ArchimedeanKernel {
    KernelKind kind;

    // Evaluation without argument checks, for inner loops that already guarantee radius >= 0.
    [[nodiscard]] double unchecked(double radius) const noexcept {
        constexpr double pi = std::numbers::pi;
        const double r2 = radius * radius;
        if (kind == KernelKind::Real) return 2.0 * pi * r2 * (2.0 * pi * r2 - 3.0) * std::exp(-pi * r2);
        return 4.0 * pi * r2 * (pi * r2 - 1.0) * std::exp(-2.0 * pi * r2);
    }

    // Radius at which the kernel changes sign: negative below, positive above.
    [[nodiscard]] double sign_change_radius() const noexcept {
        constexpr double pi = std::numbers::pi;
        return kind == KernelKind::Real ? std::sqrt(3.0 / (2.0 * pi)) : std::sqrt(1.0 / pi);
    }
};

inline ArchimedeanKernel kernel_for(const FieldSpec& field) {
    return {field.has_real_place() ? KernelKind::Real : KernelKind::Complex};
}

inline double kernel_eval(ArchimedeanKernel kernel, double radius) {
    if (!std::isfinite(radius) || radius < 0.0) {
        throw domain_error("kernel radius must be finite and nonnegative");
    }
    return kernel.unchecked(radius);
}

} // namespace zetalaw
