#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

// pchip.hpp in Boost 1.74 calls isnan unqualified; declare it first.
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>

#include "zetalaw/analytic.hpp"
#include "zetalaw/density.hpp"
#include "zetalaw/error.hpp"
#include "zetalaw/verify.hpp"

namespace zetalaw {

/// Inverse-CDF sampler for X.
///
/// Quantiles are tabulated at p_k = k / (N + 1) and interpolated by a monotone cubic (PCHIP)
/// in the coordinates (logit p, log q). Beyond the end nodes the leading term of the lattice
/// sum gives the tail shape, anchored so that it passes through the end node.
class SamplerState {
public:
    SamplerState(FieldId field, std::vector<double> probabilities, std::vector<double> quantiles, std::uint64_t seed)
        : field_(field), probabilities_(std::move(probabilities)), quantiles_(std::move(quantiles)), seed_(seed),
          rng_(seed), interpolant_(make_interpolant(probabilities_, quantiles_)) {}

    [[nodiscard]] FieldId field() const noexcept { return field_; }
    [[nodiscard]] std::uint64_t rng_seed() const noexcept { return seed_; }
    [[nodiscard]] const std::vector<double>& probabilities() const noexcept { return probabilities_; }
    [[nodiscard]] const std::vector<double>& quantiles() const noexcept { return quantiles_; }
    [[nodiscard]] const std::mt19937_64& engine() const noexcept { return rng_; }

    /// Quantile function: table interpolation inside, analytic tail shapes outside.
    [[nodiscard]] double quantile(double p) const {
        if (!(p > 0.0 && p < 1.0)) throw domain_error("quantile: p must lie in (0, 1)");
        if (p < probabilities_.front()) return lower_tail(p);
        if (p > probabilities_.back()) return upper_tail(p);
        return std::exp(interpolant_(logit(p)));
    }

    /// Uniform variate in (0, 1) from the top 53 bits, offset by half a step so 0 never occurs.
    [[nodiscard]] double next_uniform() {
        return (double(rng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    friend bool operator==(const SamplerState& a, const SamplerState& b) {
        return a.field_ == b.field_ && a.seed_ == b.seed_ && a.probabilities_ == b.probabilities_ &&
               a.quantiles_ == b.quantiles_ && a.rng_ == b.rng_;
    }

private:
    using Pchip = boost::math::interpolators::pchip<std::vector<double>>;

    static double logit(double p) { return std::log(p / (1.0 - p)); }

    static Pchip make_interpolant(const std::vector<double>& p, const std::vector<double>& q) {
        if (p.size() < 4 || p.size() != q.size()) throw domain_error("SamplerState: table too small");
        std::vector<double> x(p.size());
        std::vector<double> y(q.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i > 0 && !(p[i] > p[i - 1] && q[i] > q[i - 1])) throw domain_error("SamplerState: table not increasing");
            x[i] = logit(p[i]);
            y[i] = std::log(q[i]);
        }
        return Pchip(std::move(x), std::move(y));
    }

    [[nodiscard]] const FieldSpec& spec() const {
        static const std::array<FieldSpec, 3> specs{field_spec(FieldId::RationalQ), field_spec(FieldId::GaussianQi),
                                                    field_spec(FieldId::QSqrtMinus2)};
        return specs[static_cast<std::size_t>(field_)];
    }

    // Solves h(w) = target for w >= start, where h is decreasing there, by safeguarded Newton.
    template <class H, class DH>
    static double solve_decreasing(H h, DH dh, double start, double target) {
        double w = start + (h(start) - target);
        for (int i = 0; i < 100; ++i) {
            const double step = (h(w) - target) / dh(w);
            w = std::max(start, w - step);
            if (std::abs(step) <= 1e-15 * w) return w;
        }
        throw root_finding_error("sampler tail inversion did not converge");
    }

    // Lower tail: P(X <= t) = sqrt|D| int_{1/(|D| t)}^inf v psi(v) dv, whose leading term is
    //   Q:         (4 / sqrt(pi)) W^{3/2} e^{-W},  W = pi A^2
    //   quadratic: W^2 e^{-W} r(1) / (2 pi),       W = 2 pi A,   with A = 1/(|D| t).
    [[nodiscard]] double lower_tail(double p) const {
        constexpr double pi = std::numbers::pi;
        const auto& f = spec();
        const bool rational = f.has_real_place();
        const double c = rational ? 1.5 : 2.0;
        auto to_w = [&](double t) {
            const double a = 1.0 / (f.abs_disc * t);
            return rational ? pi * a * a : 2.0 * pi * a;
        };
        auto h = [c](double w) { return c * std::log(w) - w; };
        auto dh = [c](double w) { return c / w - 1.0; };
        const double w1 = std::max(to_w(quantiles_.front()), c);
        const double w = solve_decreasing(h, dh, w1, h(w1) + std::log(p / probabilities_.front()));
        const double a = rational ? std::sqrt(w / pi) : w / (2.0 * pi);
        return 1.0 / (f.abs_disc * a);
    }

    // Upper tail: P(X > v) has leading term 2 (2 pi v^2 - 1) e^{-pi v^2} for Q and
    // r(1) (2 pi v - 1) e^{-2 pi v} for the quadratic fields.
    [[nodiscard]] double upper_tail(double p) const {
        constexpr double pi = std::numbers::pi;
        const bool rational = spec().has_real_place();
        auto g = [&](double v) {
            return rational ? std::log(2.0 * pi * v * v - 1.0) - pi * v * v : std::log(2.0 * pi * v - 1.0) - 2.0 * pi * v;
        };
        auto dg = [&](double v) {
            return rational ? 4.0 * pi * v / (2.0 * pi * v * v - 1.0) - 2.0 * pi * v
                            : 2.0 * pi / (2.0 * pi * v - 1.0) - 2.0 * pi;
        };
        const double v1 = quantiles_.back();
        return solve_decreasing(g, dg, v1, g(v1) + std::log((1.0 - p) / (1.0 - probabilities_.back())));
    }

    FieldId field_;
    std::vector<double> probabilities_;
    std::vector<double> quantiles_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    Pchip interpolant_;
};

/// Tabulates quantiles at k / (N + 1), k = 1..N, by Newton iteration on density_cdf.
inline SamplerState build_sampler(const DensityModel& model, int table_size, std::uint64_t seed) {
    if (table_size < 64) throw domain_error("build_sampler: table_size must be at least 64");
    std::vector<double> probabilities(table_size);
    std::vector<double> quantiles(table_size);
    double lo = 0.25 * model.self_dual_point();
    for (int k = 1; k <= table_size; ++k) {
        const double p = double(k) / (table_size + 1);
        // Bracket the root, then refine; the density is the derivative of the CDF.
        while (density_cdf(model, lo) > p) lo *= 0.5;
        double hi = std::max(lo * 1.25, lo + 1e-3);
        while (density_cdf(model, hi) < p) hi *= 1.5;
        auto f = [&](double t) { return std::make_pair(density_cdf(model, t) - p, model(t)); };
        std::uintmax_t iterations = 100;
        const double q = boost::math::tools::newton_raphson_iterate(f, 0.5 * (lo + hi), lo, hi, 44, iterations);
        if (iterations >= 100 || std::abs(density_cdf(model, q) - p) > 1e-10) {
            throw root_finding_error("build_sampler: quantile at p = " + std::to_string(p) + " did not converge");
        }
        probabilities[k - 1] = p;
        quantiles[k - 1] = q;
        lo = q;
    }
    return SamplerState(model.field().id, std::move(probabilities), std::move(quantiles), seed);
}

/// Draws `count` values of X; advances the generator held in `state`.
inline std::vector<double> sample(SamplerState& state, std::size_t count) {
    if (count < 1) throw domain_error("sample: count must be positive");
    std::vector<double> out(count);
    for (auto& x : out) x = state.quantile(state.next_uniform());
    return out;
}

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and density_cdf.
///
/// The CDF is advanced between consecutive sorted samples by a 20-point Gauss rule on psi and
/// re-anchored on density_cdf every 1024 samples.
inline double ks_statistic(const DensityModel& model, std::vector<double> samples) {
    if (samples.empty()) throw domain_error("ks_statistic: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double cdf = 0.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i % 1024 == 0) {
            cdf = density_cdf(model, samples[i]);
        } else if (samples[i] > samples[i - 1]) {
            cdf += boost::math::quadrature::gauss<double, 20>::integrate([&](double t) { return model(t); },
                                                                         samples[i - 1], samples[i]);
        }
        worst = std::max({worst, cdf - double(i) / n, double(i + 1) / n - cdf});
    }
    return worst;
}

/// Compares sample moments (1/N) sum x^s with |D|^{-s/2} xi_K(s); passes when every
/// difference is within 4 estimated standard errors.
inline VerificationReport validate_samples(const SamplerState& state, const std::vector<double>& samples,
                                           const std::vector<double>& s_values) {
    if (samples.size() < 2) throw domain_error("validate_samples: need at least two samples");
    const auto field = field_spec(state.field());
    const double n = double(samples.size());
    std::vector<std::pair<std::string, double>> params;
    double worst = 0.0;
    for (double s : s_values) {
        if (std::abs(s) > 3.0) throw domain_error("validate_samples: |s| must be at most 3");
        double mean = 0.0;
        for (double x : samples) mean += std::pow(x, s);
        mean /= n;
        double var = 0.0;
        for (double x : samples) var += (std::pow(x, s) - mean) * (std::pow(x, s) - mean);
        var /= n - 1.0;
        const double exact = (std::pow(double(field.abs_disc), -0.5 * s) * xi(field, s)).real();
        const double se = std::sqrt(var / n);
        const double z = se > 0.0 ? std::abs(mean - exact) / se : (std::abs(mean - exact) <= 1e-12 ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        params.emplace_back("s", s);
        params.emplace_back("sample_moment", mean);
        params.emplace_back("exact_moment", exact);
        params.emplace_back("z", z);
    }
    return make_report("sample-moments", state.field(), std::move(params), worst, 4.0);
}

} // namespace zetalaw
