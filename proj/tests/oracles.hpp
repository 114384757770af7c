// Independent oracles used by the test suites. Each one recomputes a
// quantity along a route the implementation under test does not share:
// the tau series by literal expansion of the defining product, sigma_11 by
// trial division, the correction series by per-prime power-series division,
// prime counts by a plain Eratosthenes pass, and progression sums by a
// direct loop.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "heckelab/int128.hpp"

namespace oracle {

// Coefficients tau(1..n_max) of q * prod_{m>=1} (1-q^m)^24 by multiplying
// the 24 binomial factors one at a time. Quadratic and slow; the point is
// that it shares nothing with the sparse production route.
inline std::vector<heckelab::int128> naive_tau(std::int64_t n_max) {
    const std::int64_t deg = n_max - 1;
    std::vector<heckelab::int128> poly(static_cast<std::size_t>(deg) + 1, 0);
    poly[0] = 1;
    for (std::int64_t m = 1; m <= deg; ++m) {
        for (int rep = 0; rep < 24; ++rep) {
            // multiply by (1 - q^m), truncated at deg
            for (std::int64_t i = deg; i >= m; --i)
                poly[static_cast<std::size_t>(i)] -= poly[static_cast<std::size_t>(i - m)];
        }
    }
    std::vector<heckelab::int128> tau(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t n = 1; n <= n_max; ++n)
        tau[static_cast<std::size_t>(n)] = poly[static_cast<std::size_t>(n - 1)];
    return tau;
}

// sigma_11(n) mod 691 by trial division.
inline std::int64_t sigma11_mod691(std::int64_t n) {
    const std::int64_t q = 691;
    auto pow11 = [&](std::int64_t d) {
        std::int64_t r = 1, b = d % q;
        for (int i = 0; i < 11; ++i) r = r * b % q;
        return r;
    };
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        s = (s + pow11(d)) % q;
        if (d != n / d) s = (s + pow11(n / d)) % q;
    }
    return s;
}

// Divisor count by trial division.
inline std::int64_t divisor_count(std::int64_t n) {
    std::int64_t d = 0;
    for (std::int64_t i = 1; i * i <= n; ++i) {
        if (n % i != 0) continue;
        d += (i == n / i) ? 1 : 2;
    }
    return d;
}

// Primality by trial division.
inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime count by an independent Eratosthenes bitmap (the production sieve
// is a linear spf sieve).
inline std::int64_t prime_count_eratosthenes(std::int64_t n) {
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    std::int64_t count = 0;
    for (std::int64_t i = 2; i <= n; ++i) {
        if (composite[static_cast<std::size_t>(i)]) continue;
        ++count;
        for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
    }
    return count;
}

// k-full / k-free predicates by trial-division factorization.
inline bool is_kfull_bruteforce(std::int64_t n, int k) {
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e < k) return false;
    }
    return n == 1;  // a leftover prime factor has exponent 1 < k
}
inline bool is_kfree_bruteforce(std::int64_t n, int k) {
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e >= k) return false;
    }
    return true;
}

// g(l) = sum over all pairs m d^k = l of mu(d), by the literal double loop.
inline int mobius_bruteforce(std::int64_t d) {
    int omega = 0;
    for (std::int64_t p = 2; p * p <= d; ++p) {
        if (d % p != 0) continue;
        d /= p;
        if (d % p == 0) return 0;
        ++omega;
    }
    if (d > 1) ++omega;
    return omega % 2 == 0 ? 1 : -1;
}
inline int kfree_indicator_double_loop(std::int64_t l, int k) {
    int g = 0;
    for (std::int64_t d = 1;; ++d) {
        heckelab::int128 dk = 1;
        for (int i = 0; i < k; ++i) dk *= d;
        if (dk > l) break;
        auto dk64 = static_cast<std::int64_t>(dk);
        for (std::int64_t m = 1; m * dk64 <= l; ++m)
            if (m * dk64 == l) g += mobius_bruteforce(d);
    }
    return g;
}

// Per-prime local division oracle: expands the local factor of the
// lambda^4 series at p and divides by the local L-factors as power series,
// giving u(p^j) without any global Dirichlet arithmetic. All inputs come
// from lambda(p) alone through the Hecke recursion.
inline std::vector<double> local_u_at_prime(double lambda_p, int j_max) {
    int need = 4 * j_max + 1;
    std::vector<double> lam(static_cast<std::size_t>(need) + 1, 0.0);
    lam[0] = 1.0;
    if (need >= 1) lam[1] = lambda_p;
    for (int j = 2; j <= need; ++j)
        lam[static_cast<std::size_t>(j)] =
            lambda_p * lam[static_cast<std::size_t>(j - 1)] - lam[static_cast<std::size_t>(j - 2)];

    // F_p(X) = sum lambda(p^j)^4 X^j
    std::vector<double> f(static_cast<std::size_t>(j_max) + 1, 0.0);
    for (int j = 0; j <= j_max; ++j) {
        double l = lam[static_cast<std::size_t>(j)];
        f[static_cast<std::size_t>(j)] = (l * l) * (l * l);
    }

    // Local denominators through the Chebyshev parameterization.
    double c2 = lambda_p * lambda_p - 2.0;        // 2cos(2 theta)
    double c4 = c2 * c2 - 2.0;                    // 2cos(4 theta)
    auto poly_mul = [](const std::vector<double>& a, const std::vector<double>& b) {
        std::vector<double> c(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return c;
    };
    std::vector<double> zeta_loc{1.0, -1.0};
    std::vector<double> sym2_loc = poly_mul(zeta_loc, {1.0, -c2, 1.0});
    std::vector<double> sym4_loc = poly_mul(sym2_loc, {1.0, -c4, 1.0});

    // u_p(X) = F_p(X) (1-X)^2 sym2_loc(X)^3 sym4_loc(X), truncated.
    auto mul_trunc = [&](std::vector<double> a, const std::vector<double>& b) {
        auto c = poly_mul(a, b);
        c.resize(static_cast<std::size_t>(j_max) + 1);
        return c;
    };
    auto u = f;
    u = mul_trunc(u, zeta_loc);
    u = mul_trunc(u, zeta_loc);
    u = mul_trunc(u, sym2_loc);
    u = mul_trunc(u, sym2_loc);
    u = mul_trunc(u, sym2_loc);
    u = mul_trunc(u, sym4_loc);
    return u;
}

// Direct loop progression sum for small cases.
inline double progression_sum_direct(const std::vector<double>& v, std::int64_t x,
                                     std::int64_t q) {
    double s = 0.0;
    for (std::int64_t n = 1; n <= x + 1; ++n)
        if (n % q == 1 % q) s += v[static_cast<std::size_t>(n)];
    return s;
}

}  // namespace oracle
