#pragma once

// Independent reference computations used only by the test suites. Nothing here calls into the
// production code paths it is compared against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

// Exhaustive count of (a, b) in Z^2 with a^2 + d b^2 == n.
inline std::int64_t lattice_count_exact(int d, std::int64_t n) {
    std::int64_t count = 0;
    const auto bound = static_cast<std::int64_t>(std::sqrt(double(n))) + 1;
    for (std::int64_t a = -bound; a <= bound; ++a)
        for (std::int64_t b = -bound; b <= bound; ++b)
            if (a * a + d * b * b == n) ++count;
    return count;
}

// #{(a, b) != 0 : a^2 + d b^2 <= n} by row enumeration.
inline std::int64_t lattice_points_in_ellipse(int d, std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t b = 0; d * b * b <= n; ++b) {
        const std::int64_t rest = n - d * b * b;
        std::int64_t a = static_cast<std::int64_t>(std::sqrt(double(rest)));
        while (a * a > rest) --a;
        while ((a + 1) * (a + 1) <= rest) ++a;
        count += (b == 0 ? 1 : 2) * (2 * a + 1);
    }
    return count - 1;
}

// Van Wijngaarden repeated averaging of the partial sums of an alternating series.
template <class Term>
double accelerated_alternating_sum(Term term, int levels = 40) {
    std::vector<double> partial(levels);
    double s = 0.0;
    for (int k = 0; k < levels; ++k) {
        s += term(k);
        partial[k] = s;
    }
    for (int level = levels - 1; level > 0; --level)
        for (int k = 0; k < level; ++k) partial[k] = 0.5 * (partial[k] + partial[k + 1]);
    return partial[0];
}

inline std::vector<int> primes_up_to(int n) {
    std::vector<char> sieve(n + 1, 1);
    std::vector<int> primes;
    for (int p = 2; p <= n; ++p) {
        if (!sieve[p]) continue;
        primes.push_back(p);
        for (long long q = 1LL * p * p; q <= n; q += p) sieve[q] = 0;
    }
    return primes;
}

// Composite Simpson rule; independent of the adaptive Gauss-Kronrod engine.
template <class F>
double simpson(F f, double a, double b, int intervals) {
    if (intervals % 2) ++intervals;
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

} // namespace oracle
