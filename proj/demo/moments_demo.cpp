// Prints moments of X computed three ways: from xi_K, by integrating the density, and from a
// sample drawn with the inverse-CDF sampler.

#include <cmath>
#include <cstdio>

#include "zetalaw/zetalaw.hpp"

int main() {
    using namespace zetalaw;
    constexpr std::uint64_t seed = 2024;
    constexpr std::size_t count = 50000;

    for (auto id : all_fields) {
        const auto field = field_spec(id);
        const DensityModel model(id);
        auto sampler = build_sampler(model, 512, seed);
        const auto xs = sample(sampler, count);

        std::printf("%s  (|D| = %d, c_K = %.6f)\n", std::string(field_name(id)).c_str(), field.abs_disc, field.c_k);
        std::printf("   s     |D|^{-s/2} xi(s)   int t^s psi(t) dt   sample mean of X^s\n");
        for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
            double empirical = 0.0;
            for (double x : xs) empirical += std::pow(x, s);
            empirical /= double(count);
            std::printf("%5.1f   %17.12f   %17.12f   %17.6f\n", s, exact_moment(field, s).real(),
                        mellin(model, s).real(), empirical);
        }
        const auto k = cumulants(field, model);
        std::printf("   E[-log X] = %.12f   Var(log X) = %.12f   lambda_1 = %.12f\n\n", k.kappa1, k.kappa2,
                    li_lambda_contour(field, 1));
    }
}
