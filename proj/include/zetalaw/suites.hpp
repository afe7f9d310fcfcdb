#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "zetalaw/analytic.hpp"
#include "zetalaw/density.hpp"
#include "zetalaw/field_data.hpp"
#include "zetalaw/verify.hpp"

namespace zetalaw {

/// Worker count: ZETALAW_THREADS if set to a positive integer, else the hardware concurrency.
inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ZETALAW_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return unsigned(v);
    }
    return hw;
}

/// Evaluates f(0), ..., f(n-1) on a small thread pool; results keep index order.
/// The first exception thrown by any task is rethrown after all workers finish.
template <class F>
auto parallel_map(std::size_t n, F f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            if (failed) return;
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
            }
        }
    };
    const unsigned threads = std::min<std::size_t>(worker_count(), std::max<std::size_t>(n, 1));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    std::vector<R> out;
    out.reserve(n);
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"local-zeta", "poisson", "positivity", "functional-equation", "mellin"};
    return names;
}

inline std::vector<Complex> functional_equation_grid() {
    std::vector<Complex> grid;
    for (double sigma : {-1.0, -0.5, 0.25, 0.75, 2.0, 3.0})
        for (double tau : {0.0, 1.0, 5.0, 10.0}) grid.emplace_back(sigma, tau);
    return grid;
}

inline std::vector<Complex> mellin_points() {
    std::vector<Complex> points;
    for (double s : {-2.0, -1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0, 4.0}) points.emplace_back(s, 0.0);
    for (double tau : {1.0, 5.0, 10.0}) points.emplace_back(0.5, tau);
    return points;
}

inline std::vector<Complex> local_zeta_points() {
    return {{0.5, 0.0}, {1.5, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {2.0, 1.0}, {0.5, 5.0}};
}

/// |D|^{-s/2} xi_K(s), the moment E[X^s].
inline Complex exact_moment(const FieldSpec& field, Complex s) {
    return std::exp(-0.5 * s * std::log(double(field.abs_disc))) * xi(field, s);
}

namespace detail {

inline std::vector<VerificationReport> local_zeta_suite() {
    std::vector<std::pair<KernelKind, Complex>> cases;
    for (auto kind : {KernelKind::Real, KernelKind::Complex})
        for (auto s : local_zeta_points()) cases.emplace_back(kind, s);
    return parallel_map(cases.size(), [&](std::size_t i) { return check_local_zeta(cases[i].first, cases[i].second); });
}

inline std::vector<VerificationReport> poisson_suite() {
    std::vector<std::function<VerificationReport()>> tasks;
    for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) tasks.emplace_back([y] { return check_theta_selfdual(y, 40); });
    tasks.emplace_back([] {
        // Residual of the hard-coded normalization at the calibration points, or infinity when the
        // calibration no longer singles it out.
        const auto found = calibrate_lattice_normalization();
        double worst = INFINITY;
        if (found && *found == calibrated_lattice_normalization) {
            worst = 0.0;
            for (const auto& [id, x] : lattice_calibration_points())
                worst = std::max(worst, check_lattice_selfdual(field_spec(id), x, 40).residual);
        }
        return make_report("lattice-calibration", std::nullopt,
                           {{"exponent", double(calibrated_lattice_normalization.exponent)},
                            {"candidates_checked", 12.0}},
                           worst, 1e-9);
    });
    for (auto id : {FieldId::GaussianQi, FieldId::QSqrtMinus2}) {
        for (double x : {0.5, 1.0, 2.0}) tasks.emplace_back([id, x] { return check_lattice_selfdual(field_spec(id), x, 40); });
        tasks.emplace_back([id] { return check_dual_positivity(field_spec(id), std::sqrt(std::numbers::pi), 20); });
    }
    return parallel_map(tasks.size(), [&](std::size_t i) { return tasks[i](); });
}

inline std::vector<VerificationReport> positivity_suite() {
    std::vector<std::function<VerificationReport()>> tasks;
    for (auto id : all_fields) {
        tasks.emplace_back([id] { return check_positivity_mechanism(field_spec(id), log_grid(1e-3, 1e3, 10000)); });
        tasks.emplace_back([id] {
            const double mass = mellin(DensityModel(id), 0.0).real();
            return make_report("mass", id, {{"integral", mass}}, std::abs(mass - 1.0), 1e-8);
        });
    }
    return parallel_map(tasks.size(), [&](std::size_t i) { return tasks[i](); });
}

inline VerificationReport functional_equation_report(FieldId id) {
    const auto f = field_spec(id);
    double worst = 0.0;
    for (auto s : functional_equation_grid()) {
        const Complex z = completed_z(f, s);
        const Complex image = std::exp((0.5 - s) * std::log(double(f.abs_disc))) * completed_z(f, 1.0 - s);
        worst = std::max(worst, std::abs(z - image) / (1.0 + std::abs(z)));
    }
    return make_report("functional-equation", id, {{"grid_points", 24.0}}, worst, 1e-9);
}

inline VerificationReport xi_symmetry_report(FieldId id) {
    const auto f = field_spec(id);
    double worst = 0.0;
    for (auto s : functional_equation_grid()) worst = std::max(worst, std::abs(xi(f, s) - xi(f, 1.0 - s)));
    return make_report("xi-symmetry", id, {{"grid_points", 24.0}}, worst, 1e-9);
}

inline VerificationReport xi_conjugate_report(FieldId id) {
    const auto f = field_spec(id);
    double worst = 0.0;
    for (auto s : functional_equation_grid()) worst = std::max(worst, std::abs(xi(f, std::conj(s)) - std::conj(xi(f, s))));
    return make_report("xi-conjugate", id, {{"grid_points", 24.0}}, worst, 1e-12);
}

inline VerificationReport xi_normalization_report(FieldId id) {
    const auto f = field_spec(id);
    const double r0 = std::abs(xi(f, 0.0) - 1.0);
    const double r1 = std::abs(xi(f, 1.0) - 1.0);
    return make_report("xi-normalization", id, {{"xi0_error", r0}, {"xi1_error", r1}}, std::max(r0, r1), 1e-10);
}

// psi_Y(1/t) = t^3 psi_Y(t) for Y = sqrt|D| X, on 91 points of [1, 10].
inline VerificationReport flip_symmetry_report(FieldId id) {
    const DensityModel model(id);
    double worst = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double t = 1.0 + 0.1 * i;
        worst = std::max(worst, std::abs(scaled_density(model, 1.0 / t) - t * t * t * scaled_density(model, t)));
    }
    return make_report("flip-symmetry", id, {{"grid_points", 91.0}}, worst, 1e-9);
}

inline std::vector<VerificationReport> functional_equation_suite() {
    std::vector<std::function<VerificationReport()>> tasks;
    for (auto id : all_fields) {
        tasks.emplace_back([id] { return xi_normalization_report(id); });
        tasks.emplace_back([id] { return functional_equation_report(id); });
        tasks.emplace_back([id] { return xi_symmetry_report(id); });
        tasks.emplace_back([id] { return xi_conjugate_report(id); });
        tasks.emplace_back([id] { return flip_symmetry_report(id); });
    }
    return parallel_map(tasks.size(), [&](std::size_t i) { return tasks[i](); });
}

inline VerificationReport mellin_report(FieldId id, Complex s) {
    const auto f = field_spec(id);
    const Complex numeric = mellin(DensityModel(id), s);
    const Complex exact = exact_moment(f, s);
    return make_report("mellin", id,
                       {{"re_s", s.real()}, {"im_s", s.imag()}, {"mellin_re", numeric.real()}, {"mellin_im", numeric.imag()}},
                       std::abs(numeric - exact), 1e-6);
}

inline std::vector<VerificationReport> mellin_suite() {
    std::vector<std::pair<FieldId, Complex>> cases;
    for (auto id : all_fields)
        for (auto s : mellin_points()) cases.emplace_back(id, s);
    return parallel_map(cases.size(), [&](std::size_t i) { return mellin_report(cases[i].first, cases[i].second); });
}

} // namespace detail

/// Runs one named suite, or every suite for "all". A tolerance override replaces the
/// tolerance of every report and recomputes `passed`.
inline std::vector<VerificationReport> run_suite(std::string_view name, std::optional<double> tolerance = std::nullopt) {
    std::vector<VerificationReport> out;
    auto append = [&](std::vector<VerificationReport> part) { out.insert(out.end(), part.begin(), part.end()); };
    const bool all = name == "all";
    bool known = all;
    if (all || name == "local-zeta") known = true, append(detail::local_zeta_suite());
    if (all || name == "poisson") known = true, append(detail::poisson_suite());
    if (all || name == "positivity") known = true, append(detail::positivity_suite());
    if (all || name == "functional-equation") known = true, append(detail::functional_equation_suite());
    if (all || name == "mellin") known = true, append(detail::mellin_suite());
    if (!known) throw domain_error("unknown suite: " + std::string(name));
    if (tolerance) {
        for (auto& r : out) {
            r.tolerance = *tolerance;
            r.passed = r.residual <= *tolerance;
        }
    }
    return out;
}

} // namespace zetalaw
