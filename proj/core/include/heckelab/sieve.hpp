#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace heckelab {

// Smallest-prime-factor table built with a linear sieve, plus the prime list.
// Immutable after construction; shared read-only by all workers.
class FactorTable {
  public:
    explicit FactorTable(std::int64_t n_max);

    std::int64_t n_max() const { return n_max_; }

    std::int64_t spf(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
    bool is_prime(std::int64_t n) const { return n >= 2 && spf(n) == n; }
    const std::vector<std::int64_t>& primes() const { return primes_; }

    // Prime factorization as (p, e) pairs in increasing p.
    std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) const;

    // Divisors of n in the order produced by expanding the factorization
    // (deterministic, not sorted).
    std::vector<std::int64_t> divisors(std::int64_t n) const;

    int mobius(std::int64_t n) const;
    std::int64_t totient(std::int64_t n) const;
    std::int64_t divisor_count(std::int64_t n) const;
    int omega(std::int64_t n) const;

  private:
    std::int64_t n_max_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int64_t> primes_;
};

// Sieved arrays over 0..n_max (index 0 unused, value 0).
std::vector<std::int8_t> mobius_sieve(std::int64_t n_max);
std::vector<std::int64_t> totient_sieve(std::int64_t n_max);
std::vector<std::int32_t> divisor_count_sieve(std::int64_t n_max);

}  // namespace heckelab
