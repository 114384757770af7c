#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "heckelab/kfull.hpp"
#include "heckelab/numeric.hpp"
#include "heckelab/sieve.hpp"
#include "oracles.hpp"

using namespace heckelab;

TEST_CASE("factor table basics") {
    FactorTable table(1000);
    CHECK(table.spf(12) == 2);
    CHECK(table.spf(97) == 97);
    CHECK(table.spf(91) == 7);
    CHECK(table.is_prime(2));
    CHECK(!table.is_prime(1));

    // factorization round trip
    for (std::int64_t n = 1; n <= 1000; ++n) {
        std::int64_t prod = 1;
        for (const auto& [p, e] : table.factorize(n)) {
            CHECK(oracle::is_prime(p));
            for (int i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
    CHECK_THROWS_AS(table.factorize(1001), std::out_of_range);
}

TEST_CASE("prime counts against the independent sieve and trial division") {
    FactorTable table(100000);
    // small range: trial division oracle
    std::int64_t count = 0;
    for (std::int64_t n = 2; n <= 2000; ++n)
        if (oracle::is_prime(n)) ++count;
    std::int64_t table_count = 0;
    for (std::int64_t p : table.primes())
        if (p <= 2000) ++table_count;
    CHECK(count == table_count);
    // larger range: second sieve implementation
    CHECK(static_cast<std::int64_t>(table.primes().size()) ==
          oracle::prime_count_eratosthenes(100000));
}

TEST_CASE("pi(10^6) = 78498 by two independent sieves") {
    FactorTable table(1000000);
    CHECK(table.primes().size() == 78498);
    CHECK(oracle::prime_count_eratosthenes(1000000) == 78498);
}

TEST_CASE("sieved mobius, totient and divisor counts") {
    const std::int64_t n = 3000;
    FactorTable table(n);
    auto mu = mobius_sieve(n);
    auto phi = totient_sieve(n);
    auto d = divisor_count_sieve(n);
    for (std::int64_t i = 1; i <= n; ++i) {
        CHECK(static_cast<int>(mu[static_cast<std::size_t>(i)]) == oracle::mobius_bruteforce(i));
        CHECK(mu[static_cast<std::size_t>(i)] == table.mobius(i));
        CHECK(phi[static_cast<std::size_t>(i)] == table.totient(i));
        CHECK(d[static_cast<std::size_t>(i)] == oracle::divisor_count(i));
    }
    CHECK(phi[210] == 48);
}

TEST_CASE("k-full split") {
    FactorTable table(100000);

    SUBCASE("named examples") {
        auto s = kfull_split(12, 2, table);
        CHECK(s.q_part == 3);
        CHECK(s.k_part == 4);
        auto t = kfull_split(720, 3, table);
        CHECK(t.q_part == 45);
        CHECK(t.k_part == 16);
        auto one = kfull_split(1, 5, table);
        CHECK(one.q_part == 1);
        CHECK(one.k_part == 1);
    }

    SUBCASE("round trip and predicates for all n <= 20000, k in 2..5") {
        for (int k = 2; k <= 5; ++k) {
            for (std::int64_t n = 1; n <= 20000; ++n) {
                auto s = kfull_split(n, k, table);
                CHECK(s.q_part * s.k_part == n);
                CHECK(std::gcd(s.q_part, s.k_part) == 1);
                CHECK(is_kfree(s.q_part, k, table));
                CHECK(is_kfull(s.k_part, k, table));
            }
        }
    }

    SUBCASE("uniqueness: any other coprime k-free/k-full pair equals the split") {
        for (std::int64_t n = 1; n <= 2000; ++n) {
            auto s = kfull_split(n, 2, table);
            for (std::int64_t a = 1; a * a <= n; ++a) {
                if (n % a != 0) continue;
                for (std::int64_t q : {a, n / a}) {
                    std::int64_t kp = n / q;
                    if (std::gcd(q, kp) != 1) continue;
                    if (is_kfree(q, 2, table) && is_kfull(kp, 2, table)) {
                        CHECK(q == s.q_part);
                        CHECK(kp == s.k_part);
                    }
                }
            }
        }
    }
}

TEST_CASE("k-free and k-full predicates") {
    FactorTable table(200);
    CHECK(is_kfull(8, 2, table));
    CHECK(!is_kfull(12, 2, table));
    CHECK(is_kfree(12, 3, table));
    CHECK(is_kfull(1, 2, table));
    CHECK(is_kfree(1, 2, table));
    for (std::int64_t n = 1; n <= 200; ++n)
        for (int k = 2; k <= 4; ++k) {
            CHECK(is_kfull(n, k, table) == oracle::is_kfull_bruteforce(n, k));
            CHECK(is_kfree(n, k, table) == oracle::is_kfree_bruteforce(n, k));
        }
}

TEST_CASE("mobius k-free indicator") {
    FactorTable table(100000);

    SUBCASE("named examples") {
        CHECK(mobius_kfree_indicator(4, 2, table) == 0);  // mu(1) + mu(2)
        CHECK(mobius_kfree_indicator(6, 2, table) == 1);  // only d = 1
        CHECK(mobius_kfree_indicator(1, 2, table) == 1);
    }

    SUBCASE("equals the k-free indicator against the double-loop oracle") {
        for (int k : {2, 3, 4}) {
            for (std::int64_t l = 1; l <= 3000; ++l) {
                int g = mobius_kfree_indicator(l, k, table);
                CHECK(g == (is_kfree(l, k, table) ? 1 : 0));
                CHECK(g == oracle::kfree_indicator_double_loop(l, k));
            }
        }
    }

    SUBCASE("exhaustive identity over a bigger range") {
        for (int k : {2, 3, 4})
            for (std::int64_t l = 1; l <= 100000; ++l)
                if (mobius_kfree_indicator(l, k, table) != (is_kfree(l, k, table) ? 1 : 0))
                    FAIL("g(l) mismatch at l=" << l << " k=" << k);
    }
}

TEST_CASE("k-full enumeration") {
    FactorTable table(100000);

    SUBCASE("frozen small lists") {
        CHECK(enumerate_kfull(50, 2) ==
              std::vector<std::int64_t>{1, 4, 8, 9, 16, 25, 27, 32, 36, 49});
        CHECK(enumerate_kfull(100, 3) == std::vector<std::int64_t>{1, 8, 16, 27, 32, 64, 81});
    }

    SUBCASE("matches the sieve predicate") {
        for (int k : {2, 3, 5}) {
            auto listed = enumerate_kfull(100000, k);
            std::vector<std::int64_t> sieved;
            for (std::int64_t n = 1; n <= 100000; ++n)
                if (is_kfull(n, k, table)) sieved.push_back(n);
            CHECK(listed == sieved);
        }
    }

    SUBCASE("normalized counts stabilize for k = 2") {
        double r4 = static_cast<double>(enumerate_kfull(10000, 2).size()) / 100.0;
        double r5 = static_cast<double>(enumerate_kfull(100000, 2).size()) /
                    std::sqrt(100000.0);
        double r6 = static_cast<double>(enumerate_kfull(1000000, 2).size()) / 1000.0;
        CHECK(std::fabs(r5 - r6) / r6 < 0.05);
        CHECK(std::fabs(r4 - r6) / r6 < 0.10);
    }

    SUBCASE("enumeration works past the factor-table range") {
        auto big = enumerate_kfull(100000000, 3);
        CHECK(big.front() == 1);
        CHECK(big.back() <= 100000000);
        for (std::size_t i = 1; i < big.size(); ++i) CHECK(big[i - 1] < big[i]);
        for (std::int64_t v : big)
            if (v <= 100000) CHECK(is_kfull(v, 3, table));
    }
}

TEST_CASE("k-full tail sums") {
    FactorTable table(1000);

    SUBCASE("empty tail") {
        auto res = kfull_tail_sum(1000000, 2, 1000000);
        CHECK(res.sum == 0.0);
    }

    SUBCASE("matches the predicate scan") {
        auto res = kfull_tail_sum(100, 2, 1000000);
        CompensatedSum ref;
        for (std::int64_t kappa : enumerate_kfull(1000000, 2))
            if (kappa > 100) ref.add(1.0 / static_cast<double>(kappa));
        CHECK(res.sum == doctest::Approx(ref.value()).epsilon(1e-12));
    }

    SUBCASE("ratio against x^{1/k-1} bounded by 10 over the x grid") {
        for (std::int64_t x : {100, 1000, 10000}) {
            auto res = kfull_tail_sum(x, 2, 1000000);
            CHECK(res.ratio > 0.0);
            CHECK(res.ratio < 10.0);
        }
    }
}

TEST_CASE("mertens-type prime reciprocal bound") {
    FactorTable table(1000000);

    SUBCASE("x = 10 by hand") {
        std::vector<std::int64_t> grid{10};
        auto verdicts = mertens_check(grid, table);
        REQUIRE(verdicts.size() == 1);
        double expect = 1.0 / 2 + 1.0 / 3 + 1.0 / 5 + 1.0 / 7;
        CHECK(verdicts[0].prime_sum == doctest::Approx(expect).epsilon(1e-15));
        double lx = std::log(10.0);
        CHECK(verdicts[0].bound ==
              doctest::Approx(std::log(lx) + kMertensB + 1.0 / (lx * lx)).epsilon(1e-15));
        CHECK(verdicts[0].holds);
    }

    SUBCASE("strict inequality on a log grid up to 10^6") {
        auto grid = log_grid(3, 1000000, 60);
        auto verdicts = mertens_check(grid, table);
        for (const auto& v : verdicts) {
            CAPTURE(v.x);
            CHECK(v.holds);
            CHECK(v.prime_sum < v.bound);
        }
        // the prime sum is nondecreasing everywhere; the bound only from
        // x >= 5 (the 1/log^2 x term still dominates its slope below
        // x = e^sqrt(2))
        for (std::size_t i = 1; i < verdicts.size(); ++i) {
            CHECK(verdicts[i].prime_sum >= verdicts[i - 1].prime_sum);
            if (verdicts[i - 1].x >= 5) CHECK(verdicts[i].bound >= verdicts[i - 1].bound);
        }
    }

    SUBCASE("grid below 3 is rejected") {
        std::vector<std::int64_t> grid{2};
        CHECK_THROWS_AS(mertens_check(grid, table), std::invalid_argument);
    }
}

TEST_CASE("totient ratio bound") {
    SUBCASE("q = 210 value") {
        // 210 = 2*3*5*7, phi = 48, q/phi = 4.375
        FactorTable table(210);
        CHECK(table.totient(210) == 48);
        CHECK(210.0 / 48.0 == doctest::Approx(4.375));
    }

    SUBCASE("max over 100 <= q <= 10^5 is small and attained at a primorial-like q") {
        auto rep = totient_ratio_check(100000);
        CHECK(std::isfinite(rep.max_ratio));
        CHECK(rep.max_ratio < 10.0);
        CHECK(rep.max_ratio > 1.0);
        // the argmax must be divisible by 2*3*5 at least
        CHECK(rep.argmax % 30 == 0);
    }

    SUBCASE("prime q ratios stay below 1.1 for q >= 100") {
        FactorTable table(10000);
        for (std::int64_t q : table.primes()) {
            if (q < 100) continue;
            double ratio = static_cast<double>(q) /
                           (static_cast<double>(q - 1) * std::log(std::log(static_cast<double>(q))));
            CHECK(ratio < 1.1);
        }
    }
}

TEST_CASE("kernel functions") {
    FactorTable table(100000);

    SUBCASE("values depend only on the k-full part (two evaluation paths)") {
        for (KernelId id : {KernelId::const_one, KernelId::kfree_indicator,
                            KernelId::omega_of_kpart, KernelId::divisors_of_kpart}) {
            for (int k : {2, 3}) {
                KernelFunction kernel{id, k};
                for (std::int64_t n = 1; n <= 20000; ++n) {
                    auto split = kfull_split(n, k, table);
                    CHECK(kernel.eval(n, table) == kernel.base(split.k_part, table));
                }
            }
        }
    }

    SUBCASE("specific values") {
        KernelFunction omega{KernelId::omega_of_kpart, 2};
        CHECK(omega.eval(4, table) == 1);
        CHECK(omega.eval(9, table) == 1);
        CHECK(omega.eval(36, table) == 2);  // non-multiplicative: 2 != 1*1
        CHECK(omega.eval(12, table) == 1);  // k(12) = 4
        CHECK(omega.eval(30, table) == 0);  // squarefree: k-part 1
        KernelFunction divs{KernelId::divisors_of_kpart, 2};
        CHECK(divs.eval(1, table) == 1);
        CHECK(divs.eval(8, table) == 4);
        CHECK(divs.eval(12, table) == 3);  // d(4)
        KernelFunction kfree{KernelId::kfree_indicator, 2};
        CHECK(kfree.eval(10, table) == 1);
        CHECK(kfree.eval(12, table) == 0);
    }

    SUBCASE("empirical n^epsilon growth: a(n)/n^0.1 bounded") {
        for (KernelId id : {KernelId::omega_of_kpart, KernelId::divisors_of_kpart}) {
            KernelFunction kernel{id, 2};
            double worst = 0.0;
            for (std::int64_t n = 1; n <= 100000; ++n)
                worst = std::max(worst, static_cast<double>(kernel.eval(n, table)) /
                                            std::pow(static_cast<double>(n), 0.1));
            CHECK(worst < 100.0);
        }
    }

    SUBCASE("kernel names round trip, unknown rejected") {
        for (KernelId id : {KernelId::const_one, KernelId::kfree_indicator,
                            KernelId::omega_of_kpart, KernelId::divisors_of_kpart})
            CHECK(kernel_from_name(kernel_name(id)) == id);
        CHECK_THROWS_AS(kernel_from_name("nope"), std::invalid_argument);
    }
}

TEST_CASE("kth root floor") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::int64_t> dist(1, 1000000000);
    for (int k = 2; k <= 6; ++k) {
        for (int trial = 0; trial < 2000; ++trial) {
            std::int64_t x = dist(rng);
            std::int64_t r = kth_root_floor(x, k);
            int128 rk = 1, rk1 = 1;
            for (int i = 0; i < k; ++i) {
                rk *= r;
                rk1 *= r + 1;
            }
            CHECK(rk <= x);
            CHECK(rk1 > x);
        }
        CHECK(kth_root_floor(1, k) == 1);
        CHECK(kth_root_floor(0, k) == 0);
    }
}
