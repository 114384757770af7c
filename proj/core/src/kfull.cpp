#include "heckelab/kfull.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heckelab/numeric.hpp"

namespace heckelab {

KFullSplit kfull_split(std::int64_t n, int k, const FactorTable& table) {
    if (n < 1) throw std::invalid_argument("kfull_split: n must be >= 1");
    if (k < 2) throw std::invalid_argument("kfull_split: k must be >= 2");
    KFullSplit split{n, k, 1, 1};
    if (n == 1) return split;
    for (const auto& [p, e] : table.factorize(n)) {
        std::int64_t pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        if (e < k)
            split.q_part *= pe;
        else
            split.k_part *= pe;
    }
    return split;
}

bool is_kfree(std::int64_t n, int k, const FactorTable& table) {
    return kfull_split(n, k, table).k_part == 1;
}

bool is_kfull(std::int64_t n, int k, const FactorTable& table) {
    return kfull_split(n, k, table).q_part == 1;
}

std::int64_t kth_root_floor(std::int64_t x, int k) {
    if (x < 1) return 0;
    auto r = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(x),
                                                           1.0 / static_cast<double>(k))));
    auto pow_le = [&](std::int64_t b) {
        std::int64_t v = 1;
        for (int i = 0; i < k; ++i) {
            if (b != 0 && v > x / b) return false;
            v *= b;
        }
        return v <= x;
    };
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

int mobius_kfree_indicator(std::int64_t l, int k, const FactorTable& table) {
    if (l < 1) throw std::invalid_argument("mobius_kfree_indicator: l must be >= 1");
    if (k < 2) throw std::invalid_argument("mobius_kfree_indicator: k must be >= 2");
    int g = 0;
    std::int64_t d_max = kth_root_floor(l, k);
    for (std::int64_t d = 1; d <= d_max; ++d) {
        std::int64_t dk = 1;
        for (int i = 0; i < k; ++i) dk *= d;
        if (l % dk == 0) g += table.mobius(d);
    }
    return g;
}

namespace {

void kfull_dfs(std::int64_t x, int k, const std::vector<std::int64_t>& primes,
               std::size_t start, std::int64_t value, std::vector<std::int64_t>& out) {
    out.push_back(value);
    for (std::size_t i = start; i < primes.size(); ++i) {
        std::int64_t p = primes[i];
        // Need p^k * value <= x to descend.
        std::int64_t pe = value;
        bool fits = true;
        for (int j = 0; j < k; ++j) {
            if (pe > x / p) {
                fits = false;
                break;
            }
            pe *= p;
        }
        if (!fits) break;  // primes increase, nothing further fits
        while (true) {
            kfull_dfs(x, k, primes, i + 1, pe, out);
            if (pe > x / p) break;
            pe *= p;
        }
    }
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
    std::vector<std::int64_t> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    for (std::int64_t i = 2; i <= n; ++i) {
        if (!composite[static_cast<std::size_t>(i)]) {
            primes.push_back(i);
            for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
        }
    }
    return primes;
}

}  // namespace

std::vector<std::int64_t> enumerate_kfull(std::int64_t x, int k) {
    if (x < 1) throw std::invalid_argument("enumerate_kfull: x must be >= 1");
    if (k < 2) throw std::invalid_argument("enumerate_kfull: k must be >= 2");
    auto primes = primes_up_to(kth_root_floor(x, k));
    std::vector<std::int64_t> out;
    kfull_dfs(x, k, primes, 0, 1, out);
    std::sort(out.begin(), out.end());
    return out;
}

KFullTailSum kfull_tail_sum(std::int64_t x, int k, std::int64_t x_max) {
    KFullTailSum res;
    if (x >= x_max) return res;
    auto kfull = enumerate_kfull(x_max, k);
    CompensatedSum sum;
    for (std::int64_t kappa : kfull)
        if (kappa > x) sum.add(1.0 / static_cast<double>(kappa));
    res.sum = sum.value();
    res.ratio = res.sum / std::pow(static_cast<double>(x),
                                   1.0 / static_cast<double>(k) - 1.0);
    return res;
}

std::vector<MertensVerdict> mertens_check(std::span<const std::int64_t> x_grid,
                                          const FactorTable& table) {
    std::vector<std::int64_t> grid(x_grid.begin(), x_grid.end());
    std::sort(grid.begin(), grid.end());
    std::vector<MertensVerdict> verdicts;
    CompensatedSum prime_sum;
    std::size_t next_prime = 0;
    const auto& primes = table.primes();
    for (std::int64_t x : grid) {
        if (x < 3) throw std::invalid_argument("mertens_check: grid points must be >= 3");
        if (x > table.n_max())
            throw std::invalid_argument("mertens_check: grid point beyond the prime table");
        while (next_prime < primes.size() && primes[next_prime] <= x) {
            prime_sum.add(1.0 / static_cast<double>(primes[next_prime]));
            ++next_prime;
        }
        double lx = std::log(static_cast<double>(x));
        MertensVerdict v;
        v.x = x;
        v.prime_sum = prime_sum.value();
        v.bound = std::log(lx) + kMertensB + 1.0 / (lx * lx);
        v.holds = v.prime_sum < v.bound;
        verdicts.push_back(v);
    }
    return verdicts;
}

TotientRatioReport totient_ratio_check(std::int64_t q_max) {
    if (q_max < 100) throw std::invalid_argument("totient_ratio_check: q_max must be >= 100");
    auto phi = totient_sieve(q_max);
    TotientRatioReport rep;
    for (std::int64_t q = 100; q <= q_max; ++q) {
        double ratio = static_cast<double>(q) /
                       (static_cast<double>(phi[static_cast<std::size_t>(q)]) *
                        std::log(std::log(static_cast<double>(q))));
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            rep.argmax = q;
        }
    }
    return rep;
}

std::int64_t KernelFunction::base(std::int64_t kappa, const FactorTable& table) const {
    switch (id) {
        case KernelId::const_one:
            return 1;
        case KernelId::kfree_indicator:
            return kappa == 1 ? 1 : 0;
        case KernelId::omega_of_kpart:
            return kappa == 1 ? 0 : table.omega(kappa);
        case KernelId::divisors_of_kpart:
            return table.divisor_count(kappa);
    }
    throw std::logic_error("KernelFunction: unknown kernel id");
}

std::int64_t KernelFunction::eval(std::int64_t n, const FactorTable& table) const {
    return base(kfull_split(n, k, table).k_part, table);
}

const char* kernel_name(KernelId id) {
    switch (id) {
        case KernelId::const_one:
            return "const_one";
        case KernelId::kfree_indicator:
            return "kfree_indicator";
        case KernelId::omega_of_kpart:
            return "omega_of_kpart";
        case KernelId::divisors_of_kpart:
            return "divisors_of_kpart";
    }
    return "unknown";
}

KernelId kernel_from_name(const std::string& name) {
    if (name == "const_one") return KernelId::const_one;
    if (name == "kfree_indicator") return KernelId::kfree_indicator;
    if (name == "omega_of_kpart") return KernelId::omega_of_kpart;
    if (name == "divisors_of_kpart") return KernelId::divisors_of_kpart;
    throw std::invalid_argument("unknown kernel '" + name + "'");
}

}  // namespace heckelab
