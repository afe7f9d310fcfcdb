#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "zetalaw/analytic.hpp"
#include "zetalaw/density.hpp"
#include "zetalaw/error.hpp"
#include "zetalaw/field_data.hpp"
#include "zetalaw/verify.hpp"

namespace zetalaw {

struct LiReport {
    FieldId field;
    int n;
    double lambda_contour;
    std::optional<double> lambda_probabilistic;  // only n <= 2
    double agreement;                            // |contour - probabilistic|, 0 when absent
    bool positive;
};

/// Cumulants of L = -log X.
struct CumulantPair {
    double kappa1;
    double kappa2;
};

namespace detail {

// Values of log xi on the circle 1 + radius e^{i theta_k}, theta_k = 2 pi k / nodes, with the
// imaginary part continued from arg xi = 0 at theta = 0.
inline std::vector<Complex> log_xi_on_circle(const FieldSpec& field, double radius, int nodes) {
    constexpr double pi = std::numbers::pi;
    std::vector<Complex> out(nodes);
    double previous_arg = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const Complex s = 1.0 + std::polar(radius, 2.0 * pi * k / nodes);
        const Complex value = xi(field, s);
        double arg = std::arg(value);
        arg += 2.0 * pi * std::round((previous_arg - arg) / (2.0 * pi));
        if (k > 0 && std::abs(arg - previous_arg) > pi / 2) throw branch_error("log xi: phase jump above pi/2");
        out[k] = {std::log(std::abs(value)), arg};
        previous_arg = arg;
    }
    // Closing the loop must return to the starting branch.
    if (std::abs(previous_arg) > pi / 2) throw branch_error("log xi: phase does not close around the contour");
    return out;
}

} // namespace detail

/// lambda_n = (1/(n-1)!) d^n/ds^n [s^{n-1} log xi_K(s)] at s = 1, from the trapezoidal rule on
/// a circle of the given radius around 1.
inline double li_lambda_contour(const FieldSpec& field, int n, double radius = 0.2) {
    constexpr double pi = std::numbers::pi;
    if (n < 1 || n > 8) throw domain_error("li_lambda_contour: n must be in 1..8");
    if (!(radius > 0.0 && radius <= 0.25)) throw domain_error("li_lambda_contour: radius must be in (0, 0.25]");
    for (int nodes = 256; nodes <= 4096; nodes *= 2) {
        std::vector<Complex> logs;
        try {
            logs = detail::log_xi_on_circle(field, radius, nodes);
        } catch (const branch_error&) {
            continue;
        }
        Complex mean{0.0, 0.0};
        double largest = 0.0;
        for (int k = 0; k < nodes; ++k) {
            const double theta = 2.0 * pi * k / nodes;
            const Complex s = 1.0 + std::polar(radius, theta);
            const Complex phi = std::pow(s, n - 1) * logs[k];
            largest = std::max(largest, std::abs(phi));
            mean += phi * std::polar(1.0, -n * theta);
        }
        mean /= double(nodes);
        const Complex lambda = double(n) * mean / std::pow(radius, n);
        // Rounding in phi is amplified by n / radius^n; the residue may not be held below that.
        const double floor = 64.0 * n * std::numeric_limits<double>::epsilon() * largest / std::pow(radius, n);
        if (std::abs(lambda.imag()) > std::max(1e-10, floor)) {
            throw branch_error("li_lambda_contour: imaginary residue above tolerance");
        }
        return lambda.real();
    }
    throw branch_error("li_lambda_contour: phase tracking failed at every node count");
}

/// kappa1 = E[-log X] and kappa2 = Var(log X) from the density.
inline CumulantPair cumulants(const FieldSpec& field, const DensityModel& model, const QuadratureConfig& cfg = {}) {
    if (model.field().id != field.id) throw domain_error("cumulants: model belongs to a different field");
    const double mean_log = integrate_weighted(model, [](double t) { return std::log(t); }, 1.0, -1.0, cfg);
    const double mean_log2 = integrate_weighted(model, [](double t) { const double l = std::log(t); return l * l; }, 2.0, -2.0, cfg);
    return {-mean_log, std::max(0.0, mean_log2 - mean_log * mean_log)};
}

/// lambda_1 and lambda_2 from the cumulants: lambda_1 = kappa1 - log sqrt|D|, lambda_2 = 2 lambda_1 + kappa2.
inline std::pair<double, double> li_lambda_probabilistic(const FieldSpec& field, const CumulantPair& k) {
    const double lambda1 = k.kappa1 - std::log(field.sqrt_abs_disc());
    return {lambda1, 2.0 * lambda1 + k.kappa2};
}

/// Positivity of lambda_1 and lambda_2 and the two identities tying them to the cumulants.
inline std::vector<VerificationReport> check_proposition(const FieldSpec& field, double positivity_margin = 1e-4,
                                                         double identity_tolerance = 1e-6) {
    const DensityModel model(field.id);
    const double lambda1 = li_lambda_contour(field, 1);
    const double lambda2 = li_lambda_contour(field, 2);
    const auto k = cumulants(field, model);
    const double log_root = std::log(field.sqrt_abs_disc());
    const auto [prob1, prob2] = li_lambda_probabilistic(field, k);

    // Positivity is reported as margin / lambda against tolerance 1: passes iff lambda >= margin.
    auto positivity = [&](const char* name, double lambda) {
        const double residual = lambda > 0.0 ? positivity_margin / lambda : INFINITY;
        return make_report(name, field.id, {{"lambda", lambda}, {"margin", positivity_margin}}, residual, 1.0);
    };
    return {
        positivity("li-lambda1-positive", lambda1),
        positivity("li-lambda2-positive", lambda2),
        make_report("li-kappa1-identity", field.id,
                    {{"kappa1", k.kappa1}, {"log_sqrt_disc", log_root}, {"lambda1", lambda1}},
                    std::abs(k.kappa1 - log_root - lambda1), identity_tolerance),
        make_report("li-lambda2-identity", field.id,
                    {{"lambda2", lambda2}, {"lambda1", lambda1}, {"kappa2", k.kappa2}, {"lambda2_probabilistic", prob2}},
                    std::abs(lambda2 - 2.0 * lambda1 - k.kappa2), identity_tolerance),
    };
}

/// Rows n = 1..n_max with the contour value and, for n <= 2, the cumulant route.
inline std::vector<LiReport> li_reports(const FieldSpec& field, int n_max) {
    if (n_max < 1 || n_max > 8) throw domain_error("li_reports: n_max must be in 1..8");
    const auto prob = li_lambda_probabilistic(field, cumulants(field, DensityModel(field.id)));
    std::vector<LiReport> rows;
    for (int n = 1; n <= n_max; ++n) {
        const double contour = li_lambda_contour(field, n);
        std::optional<double> other;
        if (n == 1) other = prob.first;
        if (n == 2) other = prob.second;
        rows.push_back({field.id, n, contour, other, other ? std::abs(contour - *other) : 0.0, contour > 0.0});
    }
    return rows;
}

} // namespace zetalaw
