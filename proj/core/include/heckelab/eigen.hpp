#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "heckelab/int128.hpp"
#include "heckelab/sieve.hpp"

namespace heckelab {

// Fourier coefficients of the discriminant form: tau(n) for n = 1..n_max,
// exact integers. Computed from the cube of the eta product, which is the
// sparse series sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}; raising it to the
// 8th power gives the q-expansion of q * prod (1-q^m)^24.
//
// Exactness contract: every intermediate coefficient is checked to fit a
// signed 128-bit integer before each multiplication pass; an overflow is a
// hard failure, never a silent wraparound. For n_max <= 10^6 the final
// values satisfy |tau(n)| <= n^{11/2} d(n) < 2^127 with ample margin.
std::vector<int128> compute_tau_series(std::int64_t n_max, int threads = 0);

// lambda(n) = tau(n) / n^{(weight-1)/2} as doubles. Result is 1-based
// (index 0 unused).
std::vector<double> normalize_tau(std::span<const int128> tau, int weight);

// Extends prime seed values lambda(p) to all n <= n_max using the Hecke
// recursion on prime powers and multiplicativity across coprime factors.
// The seed must be defined for every prime <= n_max and satisfy
// |seed(p)| <= 2 (the Satake parameters are unit complex numbers).
std::vector<double> hecke_extend(const std::function<double(std::int64_t)>& seed,
                                 std::int64_t n_max, const FactorTable& table);
std::vector<double> hecke_extend(const std::map<std::int64_t, double>& seed,
                                 std::int64_t n_max, const FactorTable& table);

struct SatakeAngle {
    std::int64_t p = 0;
    double theta = 0.0;  // in [0, pi], lambda(p) = 2 cos(theta)

    double lambda_p() const;
};

// Power-series coefficients b(j), j = 0..j_max, of the degree-(m+1) local
// factor prod_{0<=i<=m} (1 - alpha^{m-2i} X)^{-1} of the m-th symmetric
// power, m in {2, 4}. The expansion is done in complex arithmetic; the
// imaginary parts must cancel below 1e-12 and are dropped.
std::vector<double> sym_power_local_factor(int m, const SatakeAngle& angle, int j_max);

enum class EigenSource { delta_series, user_prime_seed };

// Immutable eigenvalue table for one eigenform. The built-in instance is
// the weight-12 discriminant form with its exact tau values; user systems
// are seeded at primes and extended by the Hecke recursion.
class EigenSystem {
  public:
    static EigenSystem delta(std::int64_t n_max, int threads = 0);
    static EigenSystem delta_from_tau(std::vector<int128> tau);
    static EigenSystem from_prime_seed(const std::function<double(std::int64_t)>& seed,
                                       std::int64_t n_max, int weight,
                                       const FactorTable& table);

    int weight() const { return weight_; }
    std::int64_t n_max() const { return n_max_; }
    EigenSource source() const { return source_; }
    bool has_tau() const { return !tau_.empty(); }

    int128 tau(std::int64_t n) const;
    // The full 1-based tau table (index 0 unused); empty for seeded systems.
    std::span<const int128> tau_table() const { return tau_; }
    double lambda(std::int64_t n) const;
    const std::vector<double>& lambda_table() const { return lambda_; }

    // lambda(n)^4 for n = 1..n_max (1-based, index 0 zero).
    std::vector<double> lambda4_table() const;

    SatakeAngle satake(std::int64_t p) const;

  private:
    EigenSystem() = default;

    int weight_ = 12;
    std::int64_t n_max_ = 0;
    EigenSource source_ = EigenSource::delta_series;
    std::vector<int128> tau_;     // 1-based; empty for seeded systems
    std::vector<double> lambda_;  // 1-based
};

// Coefficient cache: CSV with header "n,tau" and decimal values. The loader
// re-validates tau(1) = 1 and the congruence tau(n) = sigma_11(n) mod 691
// over the full loaded range.
void save_tau_cache(const std::string& path, std::span<const int128> tau);
std::vector<int128> load_tau_cache(const std::string& path);

// Stable FNV-1a checksum over the decimal tau values, used by the CLI to
// fingerprint a cache.
std::uint64_t tau_checksum(std::span<const int128> tau);

}  // namespace heckelab
