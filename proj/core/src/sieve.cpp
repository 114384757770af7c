#include "heckelab/sieve.hpp"

#include <new>
#include <stdexcept>
#include <string>

namespace heckelab {

FactorTable::FactorTable(std::int64_t n_max) : n_max_(n_max) {
    if (n_max < 2) throw std::invalid_argument("FactorTable: n_max must be >= 2");
    if (n_max > (std::int64_t{1} << 32))
        throw std::invalid_argument("FactorTable: n_max " + std::to_string(n_max) +
                                    " exceeds the 32-bit spf representation");
    try {
        spf_.assign(static_cast<std::size_t>(n_max) + 1, 0);
    } catch (const std::bad_alloc&) {
        throw std::runtime_error("FactorTable: allocation failed, need " +
                                 std::to_string((n_max + 1) * 4) + " bytes for spf array");
    }
    // Linear sieve: every composite is crossed exactly once by its spf.
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf_[static_cast<std::size_t>(i)] == 0) {
            spf_[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
            primes_.push_back(i);
        }
        std::int64_t ispf = spf_[static_cast<std::size_t>(i)];
        for (std::int64_t p : primes_) {
            if (p > ispf || p * i > n_max) break;
            spf_[static_cast<std::size_t>(p * i)] = static_cast<std::uint32_t>(p);
        }
    }
}

std::vector<std::pair<std::int64_t, int>> FactorTable::factorize(std::int64_t n) const {
    if (n < 1 || n > n_max_)
        throw std::out_of_range("FactorTable::factorize: n=" + std::to_string(n) +
                                " outside table range [1, " + std::to_string(n_max_) + "]");
    std::vector<std::pair<std::int64_t, int>> fac;
    while (n > 1) {
        std::int64_t p = spf(n);
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        fac.emplace_back(p, e);
    }
    return fac;
}

std::vector<std::int64_t> FactorTable::divisors(std::int64_t n) const {
    auto fac = factorize(n);
    std::vector<std::int64_t> divs{1};
    for (const auto& [p, e] : fac) {
        std::size_t count = divs.size();
        std::int64_t pe = 1;
        for (int j = 1; j <= e; ++j) {
            pe *= p;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pe);
        }
    }
    return divs;
}

int FactorTable::mobius(std::int64_t n) const {
    auto fac = factorize(n);
    for (const auto& [p, e] : fac)
        if (e > 1) return 0;
    return (fac.size() % 2 == 0) ? 1 : -1;
}

std::int64_t FactorTable::totient(std::int64_t n) const {
    std::int64_t phi = n;
    for (const auto& [p, e] : factorize(n)) phi -= phi / p;
    return phi;
}

std::int64_t FactorTable::divisor_count(std::int64_t n) const {
    std::int64_t d = 1;
    for (const auto& [p, e] : factorize(n)) d *= e + 1;
    return d;
}

int FactorTable::omega(std::int64_t n) const {
    return static_cast<int>(factorize(n).size());
}

std::vector<std::int8_t> mobius_sieve(std::int64_t n_max) {
    std::vector<std::int8_t> mu(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<std::int64_t> primes;
    if (n_max >= 1) mu[1] = 1;
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0) {
            spf[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
            primes.push_back(i);
            mu[static_cast<std::size_t>(i)] = -1;
        }
        std::int64_t ispf = spf[static_cast<std::size_t>(i)];
        for (std::int64_t p : primes) {
            if (p > ispf || p * i > n_max) break;
            spf[static_cast<std::size_t>(p * i)] = static_cast<std::uint32_t>(p);
            mu[static_cast<std::size_t>(p * i)] =
                (p == ispf) ? 0 : static_cast<std::int8_t>(-mu[static_cast<std::size_t>(i)]);
        }
    }
    return mu;
}

std::vector<std::int64_t> totient_sieve(std::int64_t n_max) {
    std::vector<std::int64_t> phi(static_cast<std::size_t>(n_max) + 1, 0);
    if (n_max >= 1) phi[1] = 1;
    std::vector<std::uint32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
    std::vector<std::int64_t> primes;
    for (std::int64_t i = 2; i <= n_max; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0) {
            spf[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
            primes.push_back(i);
            phi[static_cast<std::size_t>(i)] = i - 1;
        }
        std::int64_t ispf = spf[static_cast<std::size_t>(i)];
        for (std::int64_t p : primes) {
            if (p > ispf || p * i > n_max) break;
            spf[static_cast<std::size_t>(p * i)] = static_cast<std::uint32_t>(p);
            phi[static_cast<std::size_t>(p * i)] =
                (p == ispf) ? phi[static_cast<std::size_t>(i)] * p
                            : phi[static_cast<std::size_t>(i)] * (p - 1);
        }
    }
    return phi;
}

std::vector<std::int32_t> divisor_count_sieve(std::int64_t n_max) {
    std::vector<std::int32_t> d(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t i = 1; i <= n_max; ++i)
        for (std::int64_t j = i; j <= n_max; j += i) ++d[static_cast<std::size_t>(j)];
    return d;
}

}  // namespace heckelab
