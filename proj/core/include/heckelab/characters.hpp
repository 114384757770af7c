#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace heckelab {

namespace detail {
struct UnitGroupCore;
}

// One Dirichlet character mod q. Values are kept two ways: as exact
// root-of-unity exponents (value at n is e^{2 pi i expo(n)/denom}, or 0 off
// the units), used for equality and primitivity logic, and as cached complex
// doubles used in summations.
class DirichletCharacter {
  public:
    DirichletCharacter() = default;  // the trivial character mod 1

    std::int64_t modulus() const { return q_; }
    std::size_t index() const { return index_; }
    std::int64_t denom() const { return denom_; }

    // Exponent k with chi(n) = e^{2 pi i k/denom}, or -1 when gcd(n,q) > 1.
    std::int64_t expo(std::int64_t n) const;
    std::complex<double> value(std::int64_t n) const;

    std::int64_t order() const { return order_; }
    std::int64_t conductor() const { return conductor_; }
    bool is_principal() const { return order_ == 1; }
    bool is_primitive() const { return conductor_ == q_; }

    const std::vector<std::complex<double>>& values() const { return values_; }

  private:
    friend class CharacterGroup;

    std::int64_t q_ = 1;
    std::size_t index_ = 0;
    std::int64_t denom_ = 1;
    std::int64_t order_ = 1;
    std::int64_t conductor_ = 1;
    std::vector<std::int32_t> expo_{0};            // indexed by n mod q, -1 off units
    std::vector<std::complex<double>> values_{1.0};  // indexed by n mod q
};

// The full group of phi(q) Dirichlet characters mod q, built through the
// CRT decomposition of (Z/q)*: discrete logarithms on a primitive root for
// odd prime powers, and the {+-1} x <5> structure for 2^a with a >= 3.
// Characters are materialized on demand; the enumeration order is the
// tuple odometer over the cyclic components and index 0 is principal.
class CharacterGroup {
  public:
    explicit CharacterGroup(std::int64_t q);

    std::int64_t modulus() const { return q_; }
    std::int64_t phi() const { return phi_; }
    std::int64_t exponent() const { return exponent_; }
    std::size_t size() const { return static_cast<std::size_t>(phi_); }
    std::size_t principal_index() const { return 0; }

    DirichletCharacter character(std::size_t index) const;
    const std::vector<DirichletCharacter>& characters() const;

    // chi = chi0 * chi_star with chi_star a character mod conductor(chi).
    // Returns (chi0 mod q, chi_star mod q1).
    std::pair<DirichletCharacter, DirichletCharacter> factor_through(
        const DirichletCharacter& chi) const;

    // (1/phi(q)) sum_chi conj(chi(a)) sum_{n<=X} v(n) chi(n), which by
    // orthogonality equals the progression sum of v over n = a mod q.
    // v is 1-based: v[n] for n = 1..X, v[0] ignored. Requires gcd(a,q)=1.
    std::complex<double> orthogonality_project(std::span<const std::complex<double>> v,
                                               std::int64_t a, int threads = 0) const;

  private:
    std::int64_t q_;
    std::int64_t phi_;
    std::int64_t exponent_;
    std::shared_ptr<const detail::UnitGroupCore> core_;
    mutable std::shared_ptr<std::vector<DirichletCharacter>> all_;
};

inline CharacterGroup enumerate_characters(std::int64_t q) { return CharacterGroup(q); }

}  // namespace heckelab
