#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/erf.hpp>

#include "oracles.hpp"
#include "zetalaw/density.hpp"
#include "zetalaw/quadrature.hpp"

using namespace zetalaw;

namespace {

constexpr double pi = std::numbers::pi;

Complex exact_moment(const FieldSpec& f, Complex s) {
    return std::exp(-0.5 * s * std::log(double(f.abs_disc))) * xi(f, s);
}

// psi straight from the kernel: t^{-1} sum over nonzero lattice points, without r_d(n).
double psi_by_lattice_points(FieldId id, double t, int box) {
    const auto f = field_spec(id);
    double sum = 0.0;
    if (f.has_real_place()) {
        for (int n = 1; n <= box; ++n) sum += 2.0 * kernel_eval({KernelKind::Real}, t * n);
        return sum / t;
    }
    for (int a = -box; a <= box; ++a)
        for (int b = -box; b <= box; ++b)
            if (a != 0 || b != 0) sum += kernel_eval({KernelKind::Complex}, std::sqrt(t * (a * a + f.lattice_d * b * b)));
    return sum / t;
}

} // namespace

TEST(Quadrature, SmoothRealAndComplex) {
    EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0.0, 1.0), std::exp(1.0) - 1.0, 1e-14);
    const Complex z = integrate_pieces([](double x) { return std::exp(Complex{0.0, 3.0} * x); }, 0.0, pi, 0.5);
    const Complex want = (std::exp(Complex{0.0, 3.0 * pi}) - 1.0) / Complex{0.0, 3.0};
    EXPECT_LT(std::abs(z - want), 1e-14);
}

TEST(Quadrature, FailureIsReported) {
    QuadratureConfig cfg;
    cfg.max_depth = 1;
    EXPECT_THROW((void)integrate([](double x) { return std::sin(2000.0 * x * x); }, 0.0, 10.0, cfg), quadrature_error);
}

TEST(Quadrature, TailBoundsDominateClosedForms) {
    for (double a : {1.0, pi, 2.0 * pi})
        for (double T : {1.0, 2.0, 3.5}) {
            const double exact = std::sqrt(pi / a) / 2.0 * boost::math::erfc(std::sqrt(a) * T);
            EXPECT_GE(gaussian_tail_bound(0.0, a, T), exact);
            EXPECT_LE(gaussian_tail_bound(0.0, a, T), 2.0 * exact);
            EXPECT_DOUBLE_EQ(exponential_tail_bound(0.0, a, T), std::exp(-a * T) / a);
            // p = 2: closed form T e^{-aT}/a + ... for the exponential case, by simpson for the Gaussian one.
            const double g2 = oracle::simpson([a](double v) { return v * v * std::exp(-a * v * v); }, T, T + 12.0, 40000);
            EXPECT_GE(gaussian_tail_bound(2.0, a, T), g2);
            const double e2 = std::exp(-a * T) * (T * T / a + 2.0 * T / (a * a) + 2.0 / (a * a * a));
            EXPECT_GE(exponential_tail_bound(2.0, a, T) * (1 + 1e-14), e2);
        }
    EXPECT_TRUE(std::isinf(gaussian_tail_bound(10.0, 0.1, 1.0)));
}

TEST(RepCount, Examples) {
    EXPECT_EQ(rep_count(1, 1), 4);
    EXPECT_EQ(rep_count(1, 3), 0);
    EXPECT_EQ(rep_count(2, 2), 2);
    EXPECT_EQ(rep_count(2, 1), 2);
    EXPECT_EQ(rep_count(1, 25), 12);
    EXPECT_THROW(rep_count(1, 0), domain_error);
    EXPECT_THROW(rep_count(3, 1), domain_error);
}

TEST(RepCount, ExhaustiveEnumerationUpTo10000) {
    for (int d : {1, 2}) {
        std::int64_t cumulative = 0;
        for (std::int64_t n = 1; n <= 10000; ++n) {
            const auto r = rep_count(d, n);
            ASSERT_EQ(r, oracle::lattice_count_exact(d, n)) << "d=" << d << " n=" << n;
            if (d == 1) {
                ASSERT_EQ(r % 4, 0);
            }
            cumulative += r;
        }
        EXPECT_EQ(cumulative, oracle::lattice_points_in_ellipse(d, 10000));
    }
}

TEST(RepCount, BeyondCacheMatchesEnumeration) {
    for (std::int64_t n : {8193, 9000, 20000, 65537, 100000})
        for (int d : {1, 2}) EXPECT_EQ(rep_count(d, n), oracle::lattice_count_exact(d, n));
}

TEST(RepCountTable, Construction) {
    const RepCountTable table(2, 100);
    EXPECT_EQ(table.max_n(), 100);
    EXPECT_EQ(table[2], 2);
    EXPECT_EQ(table[3], 4);  // (+-1, +-1)
    EXPECT_THROW(RepCountTable(5, 10), domain_error);
}

TEST(DensityModel, RejectsBadParameters) {
    EXPECT_THROW(DensityModel(FieldId::RationalQ, 0.0), domain_error);
    EXPECT_THROW(DensityModel(FieldId::RationalQ, 1e-7), domain_error);
    EXPECT_THROW(DensityModel(FieldId::RationalQ, 1e-12, 0.4), domain_error);
    EXPECT_THROW(DensityModel(FieldId::RationalQ, 1e-12, 2.5), domain_error);
    EXPECT_NO_THROW(DensityModel(FieldId::GaussianQi, 1e-8, 2.0));
    const DensityModel m(FieldId::QSqrtMinus2);
    EXPECT_THROW((void)m(0.0), domain_error);
    EXPECT_THROW((void)m(-1.0), domain_error);
    EXPECT_THROW((void)m(std::nan("")), domain_error);
    EXPECT_THROW((void)m(INFINITY), domain_error);
}

TEST(Density, RationalAtTwoIsPositive) {
    const DensityModel m(FieldId::RationalQ);
    EXPECT_GT(m(2.0), 0.0);
    EXPECT_TRUE(m.direct_terms_nonnegative(2.0));
}

TEST(Density, BranchesAgreeAtSelfDualPoint) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        const double t = m.self_dual_point();
        EXPECT_NEAR(m.direct(t), m.flipped(t), 1e-10) << field_name(id);
    }
}

TEST(Density, BranchesAgreeOnWideRange) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (double u = 0.35; u < 3.0; u *= 1.1) {
            const double t = u * m.self_dual_point();
            const double a = m.direct(t);
            const double b = m.flipped(t);
            EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a))) << field_name(id) << " t=" << t;
        }
    }
}

TEST(Density, MatchesLatticePointSums) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (double t : {0.3, 0.5, 1.0, 2.0}) {
            const double want = psi_by_lattice_points(id, t, 60);
            EXPECT_NEAR(m(t), want, 1e-12 * std::max(1.0, std::abs(want))) << field_name(id) << " t=" << t;
        }
    }
}

TEST(Density, FlipPointDoesNotChangeValues) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logt(std::log(0.05), std::log(5.0));
    for (auto id : all_fields) {
        const DensityModel lo(id, 1e-15, 0.5), hi(id, 1e-15, 2.0);
        for (int i = 0; i < 200; ++i) {
            const double t = std::exp(logt(rng));
            EXPECT_LE(std::abs(lo(t) - hi(t)), 1e-12 * std::max(1.0, lo(t))) << field_name(id) << " t=" << t;
        }
    }
}

TEST(Density, TruncationToleranceIsHonoured) {
    for (auto id : all_fields) {
        const DensityModel coarse(id, 1e-8), fine(id, 1e-15);
        for (double t = 0.05; t < 10.0; t *= 1.3) EXPECT_LE(std::abs(coarse(t) - fine(t)), 1e-8);
    }
}

TEST(Density, VanishesAtBothEnds) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        EXPECT_LT(std::abs(m(1e-3)), 1e-100);
        EXPECT_LT(std::abs(m(1e3)), 1e-100);
        EXPECT_LT(std::abs(m(20.0)), 1e-30);
    }
}

TEST(Density, PositivityOnLogGrid) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        double lowest = INFINITY;
        for (int i = 0; i < 10000; ++i) lowest = std::min(lowest, m(1e-3 * std::pow(1e6, i / 9999.0)));
        EXPECT_GE(lowest, -1e-12) << field_name(id);
    }
}

TEST(Density, FlipSymmetryOfScaledVariable) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (int i = 0; i <= 900; ++i) {
            const double t = 1.0 + 0.01 * i;
            EXPECT_LT(std::abs(scaled_density(m, 1.0 / t) - t * t * t * scaled_density(m, t)), 1e-9);
        }
    }
}

TEST(Density, UpperTailBoundDominatesIntegral) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (double sigma : {-2.0, 0.0, 1.0, 4.0})
            for (double T : {1.0, 1.5, 2.5}) {
                const double numeric =
                    oracle::simpson([&](double v) { return std::pow(v, sigma) * std::abs(m(v)); }, T, T + 10.0, 20000);
                EXPECT_GE(m.upper_tail_bound(sigma, T), numeric) << field_name(id);
            }
        EXPECT_THROW((void)m.upper_tail_bound(0.0, 0.5), domain_error);
    }
}

TEST(Mellin, MassAndFirstMoment) {
    EXPECT_NEAR(mellin(DensityModel(FieldId::RationalQ), 1.0).real(), 1.0, 1e-10);
    EXPECT_NEAR(mellin(DensityModel(FieldId::GaussianQi), 1.0).real(), 0.5, 1e-10);
    for (auto id : all_fields) EXPECT_NEAR(mellin(DensityModel(id), 0.0).real(), 1.0, 1e-10);
}

TEST(Mellin, AgreesWithXiOnRequiredPoints) {
    const Complex points[] = {-2, -1, -0.5, 0, 0.25, 0.5, 0.75, 1, 2, 3, 4, {0.5, 1}, {0.5, 5}, {0.5, 10}};
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (auto s : points) EXPECT_LT(std::abs(mellin(m, s) - exact_moment(m.field(), s)), 1e-6) << field_name(id) << s;
    }
}

TEST(Mellin, AgreesWithXiOnWiderStrip) {
    // Left of the critical line xi is taken at 1 - s, where its series are accurate.
    for (auto id : all_fields) {
        const DensityModel m(id);
        const auto f = m.field();
        for (double sigma : {-6.0, -3.5, 1.7, 6.0})
            for (double tau : {-10.0, -2.0, 0.0, 7.0}) {
                const Complex s{sigma, tau};
                const Complex want = sigma < 0.5 ? std::exp(-0.5 * s * std::log(double(f.abs_disc))) * xi(f, 1.0 - s)
                                                 : exact_moment(f, s);
                EXPECT_LT(std::abs(mellin(m, s) - want), 1e-8 * std::max(1.0, std::abs(want))) << field_name(id) << s;
            }
    }
}

TEST(Mellin, IndependentSimpsonQuadrature) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (double s : {0.0, 2.0, -1.0}) {
            const double simpson = oracle::simpson([&](double x) {
                const double t = std::exp(x);
                return std::pow(t, s + 1.0) * m(t);
            }, std::log(1e-2), std::log(12.0), 60000);
            EXPECT_NEAR(mellin(m, s).real(), simpson, 1e-10) << field_name(id) << " s=" << s;
        }
    }
}

TEST(Cdf, LimitsAndMonotonicity) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        EXPECT_LT(density_cdf(m, 1e-3), 1e-12);
        EXPECT_NEAR(density_cdf(m, 50.0), 1.0, 1e-15);
        double previous = 0.0;
        for (double t = 0.01; t < 8.0; t *= 1.05) {
            const double c = density_cdf(m, t);
            EXPECT_GE(c, previous - 1e-15);
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
            previous = c;
        }
        EXPECT_THROW((void)density_cdf(m, 0.0), domain_error);
    }
}

TEST(Cdf, BothFormulasMeetAtSelfDualPoint) {
    const QuadratureConfig cfg;
    for (auto id : all_fields) {
        const DensityModel m(id);
        const double t = m.self_dual_point();
        const double below = m.field().sqrt_abs_disc() * detail::upper_integral(m, 1.0 / (m.field().abs_disc * t), 1.0, cfg);
        const double above = 1.0 - detail::upper_integral(m, t, 0.0, cfg);
        EXPECT_NEAR(below, above, 1e-12) << field_name(id);
    }
}

TEST(Cdf, MatchesSimpsonOfDensity) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        for (double t : {0.2, 0.5, 1.0, 1.7}) {
            const double simpson = oracle::simpson([&](double x) {
                const double v = std::exp(x);
                return v * m(v);
            }, std::log(1e-3), std::log(t), 40000);
            EXPECT_NEAR(density_cdf(m, t), simpson, 1e-11) << field_name(id) << " t=" << t;
            EXPECT_NEAR(density_cdf(m, t) + density_sf(m, t), 1.0, 1e-14);
        }
    }
}

TEST(Cdf, MedianByBisection) {
    for (auto id : all_fields) {
        const DensityModel m(id);
        double lo = 1e-2, hi = 10.0;
        for (int i = 0; i < 200 && hi - lo > 1e-14; ++i) {
            const double mid = 0.5 * (lo + hi);
            (density_cdf(m, mid) < 0.5 ? lo : hi) = mid;
        }
        EXPECT_NEAR(density_cdf(m, 0.5 * (lo + hi)), 0.5, 1e-8);
    }
}
