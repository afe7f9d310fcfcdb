// End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "../oracles.hpp"
#include "zetalaw/zetalaw.hpp"

using namespace zetalaw;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

Outcome normalization() {
    double worst = 0.0;
    for (auto id : all_fields) {
        const auto f = field_spec(id);
        worst = std::max({worst, std::abs(xi(f, 0.0) - 1.0), std::abs(xi(f, 1.0) - 1.0)});
    }
    return {worst < 1e-10, fmt("max |xi(0)-1|, |xi(1)-1| = %.3g (limit %.0e)", worst, 1e-10)};
}

Outcome functional_equation() {
    double worst = 0.0;
    for (auto id : all_fields) worst = std::max(worst, detail::functional_equation_report(id).residual);
    return {worst < 1e-9, fmt("max relative residual on 24 points = %.3g (limit %.0e)", worst, 1e-9)};
}

Outcome local_zeta() {
    double worst = 0.0;
    for (auto kind : {KernelKind::Real, KernelKind::Complex})
        for (auto s : local_zeta_points()) worst = std::max(worst, check_local_zeta(kind, s).residual);
    return {worst < 1e-8, fmt("max quadrature residual = %.3g (limit %.0e)", worst, 1e-8)};
}

Outcome poisson() {
    double theta = 0.0;
    for (double y : {0.25, 0.5, 1.0, 2.0, 4.0}) theta = std::max(theta, check_theta_selfdual(y, 40).residual);
    const auto found = calibrate_lattice_normalization();
    const bool calibrated = found && *found == calibrated_lattice_normalization;
    double lattice = calibrated ? 0.0 : INFINITY;
    for (auto id : {FieldId::GaussianQi, FieldId::QSqrtMinus2})
        for (double x : {0.5, 1.0, 2.0}) lattice = std::max(lattice, check_lattice_selfdual(field_spec(id), x, 40).residual);
    return {theta < 1e-10 && lattice < 1e-9,
            fmt("theta residual = %.3g (limit 1e-10), lattice residual = %.3g (limit 1e-09)", theta, lattice)};
}

Outcome mellin_oracle() {
    double worst = 0.0;
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (auto s : mellin_points()) worst = std::max(worst, std::abs(mellin(m, s) - exact_moment(m.field(), s)));
    }
    return {worst < 1e-6, fmt("max |mellin - moment| over 14 points = %.3g (limit %.0e)", worst, 1e-6)};
}

Outcome positivity_and_mass() {
    double min_psi = INFINITY;
    double mass_error = 0.0;
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (double t : log_grid(1e-3, 1e3, 10000)) min_psi = std::min(min_psi, m(t));
        mass_error = std::max(mass_error, std::abs(mellin(m, 0.0).real() - 1.0));
    }
    return {min_psi >= -1e-12 && mass_error < 1e-8,
            fmt("min psi = %.3g (limit -1e-12), max |mass - 1| = %.3g (limit 1e-08)", min_psi, mass_error)};
}

Outcome li_proposition() {
    double smallest = INFINITY;
    double identity = 0.0;
    for (auto id : all_fields) {
        const auto f = field_spec(id);
        const double l1 = li_lambda_contour(f, 1);
        const double l2 = li_lambda_contour(f, 2);
        const auto k = cumulants(f, DensityModel(id));
        smallest = std::min({smallest, l1, l2});
        identity = std::max({identity, std::abs(k.kappa1 - std::log(f.sqrt_abs_disc()) - l1), std::abs(l2 - 2.0 * l1 - k.kappa2)});
    }
    return {smallest > 1e-4 && identity < 1e-6,
            fmt("min lambda_1, lambda_2 = %.6g (limit 1e-4), max identity residual = %.3g (limit 1e-06)", smallest, identity)};
}

Outcome flip_symmetry() {
    double worst = 0.0;
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (int i = 0; i <= 900; ++i) {
            const double t = 1.0 + 0.01 * i;
            worst = std::max(worst, std::abs(scaled_density(m, 1.0 / t) - t * t * t * scaled_density(m, t)));
        }
    }
    return {worst < 1e-9, fmt("max |psi_Y(1/t) - t^3 psi_Y(t)| on [1, 10] = %.3g (limit %.0e)", worst, 1e-9)};
}

Outcome sampler_fidelity() {
    constexpr std::size_t n = 100000;
    constexpr std::uint64_t seed = 42;
    const double threshold = 1.95 / std::sqrt(double(n));
    double worst_ks = 0.0;
    double worst_z = 0.0;
    for (auto id : all_fields) {
        const DensityModel m(id);
        auto state = build_sampler(m, 1024, seed);
        const auto xs = sample(state, n);
        worst_ks = std::max(worst_ks, ks_statistic(m, xs));
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= double(n);
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= double(n - 1);
        worst_z = std::max(worst_z, std::abs(mean - 1.0 / m.field().sqrt_abs_disc()) / std::sqrt(var / double(n)));
    }
    return {worst_ks < threshold && worst_z < 4.0,
            fmt("max KS = %.5f (limit 1.95/sqrt(N) = 0.00617), max |mean z-score| = %.3f (limit 4)", worst_ks, worst_z)};
}

Outcome rep_count_enumeration() {
    long long mismatches = 0;
    for (int d : {1, 2})
        for (std::int64_t k = 1; k <= 10000; ++k)
            if (rep_count(d, k) != oracle::lattice_count_exact(d, k)) ++mismatches;
    return {mismatches == 0, fmt("mismatches for n <= 10^4, d in {1, 2}: %.0f of %.0f", double(mismatches), 20000.0)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"xi normalization", normalization},
        {"functional equation", functional_equation},
        {"local zeta integral", local_zeta},
        {"Poisson self-duality", poisson},
        {"Mellin transform vs xi", mellin_oracle},
        {"positivity and mass", positivity_and_mass},
        {"Li coefficients", li_proposition},
        {"flip symmetry", flip_symmetry},
        {"sampler fidelity", sampler_fidelity},
        {"representation counts", rep_count_enumeration},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, run] : criteria) {
        ++index;
        Outcome outcome;
        try {
            outcome = run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.passed) ++failures;
        std::printf("%s %2d %-24s %s\n", outcome.passed ? "PASS" : "FAIL", index, name, outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
