#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "heckelab/characters.hpp"
#include "heckelab/int128.hpp"
#include "heckelab/sieve.hpp"

namespace heckelab {

using bigint = boost::multiprecision::cpp_int;

// Exact certification layer. The floating Dirichlet arithmetic scales to
// 10^6; this layer certifies it on a prefix with integers only.
//
// Every series in the lambda^4 factorization becomes integral after the
// scaling A(n) = a(n) * n^w: the lambda^4 coefficients give tau(n)^4 at
// w = 22, and the symmetric-power coefficients clear their p^{11j} / p^{22j}
// denominators. Because d * (n/d) = n, Dirichlet convolution and division
// commute with the scaling, so the whole factorization runs in exact
// integer arithmetic.
struct ScaledIntSeries {
    std::int64_t n_max = 0;
    int scale_pow = 22;          // A(n) = a(n) * n^scale_pow
    std::vector<bigint> a;       // 1-based

    static ScaledIntSeries zero(std::int64_t n_max, int scale_pow);
    const bigint& at(std::int64_t n) const { return a[static_cast<std::size_t>(n)]; }
    double unscaled(std::int64_t n) const;  // a(n) as double
};

ScaledIntSeries convolve_exact(const ScaledIntSeries& lhs, const ScaledIntSeries& rhs);
ScaledIntSeries divide_exact(const ScaledIntSeries& lhs, const ScaledIntSeries& rhs);

// Scaled local data at one prime: coefficients of the symmetric-power local
// factor and of its denominator polynomial, both exact integers under the
// scaling p^{w j} at degree j. Requires w >= 11 for m = 2 and w >= 22 for
// m = 4 (tau_p enters through tau_p^2 / p^11).
std::vector<bigint> exact_sym_denominator(int m, int128 tau_p, std::int64_t p, int w);
std::vector<bigint> exact_sym_local(int m, int128 tau_p, std::int64_t p, int w, int j_max);

// Scaled (w = 22) factor series at the principal character mod q over the
// exact tau table, and the exact correction series they determine.
ScaledIntSeries build_exact_F(std::span<const int128> tau, std::int64_t n_max);
ScaledIntSeries build_exact_principal_l(std::int64_t q, std::int64_t n_max);
ScaledIntSeries build_exact_sym(std::span<const int128> tau, int m, std::int64_t q,
                                std::int64_t n_max, const FactorTable& table);
ScaledIntSeries extract_exact_U(std::span<const int128> tau, std::int64_t q,
                                std::int64_t n_max, const FactorTable& table);

// ----------------------------------------------------------------------
// Exact root-of-unity arithmetic: an integer combination sum c_k zeta^k
// with zeta = e^{2 pi i / level}. Vanishing is decided exactly by reducing
// the polynomial sum c_k X^k modulo the level-th cyclotomic polynomial.
// ----------------------------------------------------------------------
std::vector<bigint> cyclotomic_polynomial(std::int64_t level);

class RootOfUnitySum {
  public:
    explicit RootOfUnitySum(std::int64_t level);
    void add(std::int64_t expo, const bigint& coeff);
    bool is_zero() const;
    std::int64_t level() const { return level_; }

  private:
    std::int64_t level_;
    std::vector<bigint> c_;
};

// Exact coefficient-level checks of the induced-character identities: for
// non-primitive chi mod q with conductor q1 and inducing primitive chi*,
//   L(s,chi)            = L(s,chi*)            prod_{p|q, p!|q1} (1 - chi*(p) p^-s)
//   L(s,sym^m f x chi)  = L(s,sym^m f x chi*)  prod_{p|q, p!|q1} local denominator
// hold coefficient-by-coefficient. Both sides are integer combinations of
// roots of unity after scaling by n^w, so agreement is decided exactly.
struct InducedCheckResult {
    bool exact = true;
    std::int64_t first_failure = 0;  // 0 when exact
};
InducedCheckResult check_induced_l_identity(const CharacterGroup& group,
                                            const DirichletCharacter& chi, std::int64_t n_max);
InducedCheckResult check_induced_sym_identity(std::span<const int128> tau,
                                              const CharacterGroup& group,
                                              const DirichletCharacter& chi, int m,
                                              std::int64_t n_max, const FactorTable& table);

}  // namespace heckelab
