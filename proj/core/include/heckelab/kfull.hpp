#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heckelab/sieve.hpp"

namespace heckelab {

// Unique coprime decomposition n = q_part * k_part where q_part is k-free
// and k_part is k-full: primes with exponent < k go to q_part, the rest to
// k_part.
struct KFullSplit {
    std::int64_t n = 1;
    int k = 2;
    std::int64_t q_part = 1;
    std::int64_t k_part = 1;
};

KFullSplit kfull_split(std::int64_t n, int k, const FactorTable& table);
bool is_kfree(std::int64_t n, int k, const FactorTable& table);
bool is_kfull(std::int64_t n, int k, const FactorTable& table);

// g(l) = sum_{m d^k = l} mu(d), the Mobius expansion of the k-free
// indicator: equals 1 when l is k-free and 0 otherwise.
int mobius_kfree_indicator(std::int64_t l, int k, const FactorTable& table);

// All k-full numbers <= x in increasing order, generated constructively by
// bounded DFS over primes (needs primes only up to x^{1/k}, so it reaches
// x far past sieve memory).
std::vector<std::int64_t> enumerate_kfull(std::int64_t x, int k);

// floor(x^{1/k}) computed with integer back-correction.
std::int64_t kth_root_floor(std::int64_t x, int k);

// sum of 1/kappa over k-full kappa in (x, x_max], with the x^{1/k-1} ratio.
struct KFullTailSum {
    double sum = 0.0;
    double ratio = 0.0;  // sum / x^{1/k - 1}
};
KFullTailSum kfull_tail_sum(std::int64_t x, int k, std::int64_t x_max);

// Mertens-type bound sum_{p<=x} 1/p < log log x + B + 1/log^2 x with the
// explicit B below; checked strictly at every grid point (grid starts at
// x >= 3 so that log log x is positive).
inline constexpr double kMertensB = 0.261497212847643;
struct MertensVerdict {
    std::int64_t x = 0;
    double prime_sum = 0.0;
    double bound = 0.0;
    bool holds = false;
};
std::vector<MertensVerdict> mertens_check(std::span<const std::int64_t> x_grid,
                                          const FactorTable& table);

// max over 100 <= q <= q_max of q / (phi(q) log log q), with the argmax.
struct TotientRatioReport {
    double max_ratio = 0.0;
    std::int64_t argmax = 0;
};
TotientRatioReport totient_ratio_check(std::int64_t q_max);

// k-full kernel functions a(n) = a(k(n)): a fixed library rather than a
// user expression language, so the n^epsilon growth stays checkable.
enum class KernelId { const_one, kfree_indicator, omega_of_kpart, divisors_of_kpart };

struct KernelFunction {
    KernelId id = KernelId::const_one;
    int k = 2;

    // a(n) through the k-full split of n.
    std::int64_t eval(std::int64_t n, const FactorTable& table) const;
    // The underlying function on k-full arguments (kappa must be k-full).
    std::int64_t base(std::int64_t kappa, const FactorTable& table) const;
};

const char* kernel_name(KernelId id);
KernelId kernel_from_name(const std::string& name);

}  // namespace heckelab
