#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heckelab/characters.hpp"
#include "heckelab/eigen.hpp"
#include "heckelab/sieve.hpp"

namespace heckelab {

using cplx = std::complex<double>;

// Coefficients a(1..N) of a Dirichlet series truncated at N. Index 0 is
// unused. Multiplication is Dirichlet convolution; division is its exact
// inverse and needs a(1) != 0 in the divisor.
struct FormalDirichletSeries {
    std::int64_t n_max = 0;
    std::vector<cplx> a;  // 1-based
    std::string label;

    static FormalDirichletSeries zero(std::int64_t n_max, std::string label = {});
    // a(n) = 1 for all n (the zeta coefficients).
    static FormalDirichletSeries ones(std::int64_t n_max, std::string label = "zeta");
    // Convolution identity: e(1) = 1, e(n) = 0 otherwise.
    static FormalDirichletSeries identity(std::int64_t n_max, std::string label = "e");

    cplx at(std::int64_t n) const { return a[static_cast<std::size_t>(n)]; }
};

FormalDirichletSeries dirichlet_convolve(const FormalDirichletSeries& lhs,
                                         const FormalDirichletSeries& rhs);
// Returns the series q with q * rhs = lhs exactly; requires rhs.a(1) != 0.
FormalDirichletSeries dirichlet_divide(const FormalDirichletSeries& lhs,
                                       const FormalDirichletSeries& rhs);

// Multiplicative assembly from local factors. local(p, j_max) returns the
// power-series coefficients of the local factor at p up to order j_max
// (constant term must be 1).
using LocalFactorFn = std::function<std::vector<cplx>(std::int64_t p, int j_max)>;
FormalDirichletSeries build_from_euler(const LocalFactorFn& local, std::int64_t n_max,
                                       const FactorTable& table, std::string label = {});

// Coefficients chi(n) of L(s, chi).
FormalDirichletSeries build_l_series(const DirichletCharacter& chi, std::int64_t n_max);
// Coefficients of the principal-character L-function mod q: the zeta
// coefficients zeroed at gcd(n, q) > 1.
FormalDirichletSeries build_principal_l_series(std::int64_t q, std::int64_t n_max);

// Coefficients lambda_{sym^m}(n) chi(n) of the twisted symmetric-power
// L-function, m in {2, 4}. Pass nullptr for the untwisted series.
FormalDirichletSeries build_sym_series(const EigenSystem& eigen, int m,
                                       const DirichletCharacter* chi, std::int64_t n_max,
                                       const FactorTable& table);

// a(n) = lambda(n)^4 chi(n); pass nullptr for the untwisted coefficients.
FormalDirichletSeries build_F(const EigenSystem& eigen, const DirichletCharacter* chi,
                              std::int64_t n_max);

// The series U(s) completing the factorization of the lambda^4 series into
// L^2(s,chi) L^3(s,sym^2 f x chi) L(s,sym^4 f x chi) U(s); realized by
// Dirichlet divisions of the lambda^4 series by the four built factors.
// u(1) = 1, u vanishes at primes, support inside the squarefull numbers.
struct CorrectionSeries {
    std::int64_t n_max = 0;
    std::vector<cplx> u;  // 1-based
    std::string chi_label;

    cplx at(std::int64_t n) const { return u[static_cast<std::size_t>(n)]; }
};

CorrectionSeries extract_U(const EigenSystem& eigen, const DirichletCharacter* chi,
                           std::int64_t n_max, const FactorTable& table);

// Partial sums of sum |u(n)| n^{-sigma} over increasing cutoffs. Purely
// diagnostic: reports the increments and flags growth that is not settling.
struct ConvergenceReport {
    double sigma = 0.0;
    std::vector<std::int64_t> window_ends;
    std::vector<double> partial_sums;
    std::vector<double> increments;  // increments[i] = S(w[i+1]) - S(w[i])
    bool non_cauchy = false;
};
ConvergenceReport convergence_diagnostic(const CorrectionSeries& u, double sigma,
                                         std::span<const std::int64_t> windows);

// Euler-product value of L(1, sym^m f x chi0 mod q) over primes <= cutoff,
// the p | q factors removed; reported with the empirical truncation bracket
// |value(P) - value(P/2)|.
enum class SymPowerKind { sym2 = 2, sym4 = 4 };
struct LValueResult {
    double value = 0.0;
    double bracket = 0.0;
    std::int64_t cutoff = 0;
};
LValueResult l_value_at_one(SymPowerKind kind, std::int64_t q, std::int64_t prime_cutoff,
                            const EigenSystem& eigen, const FactorTable& table);

// Residuals of the coefficient-level factorization identity at one chi.
struct FactorizationCheck {
    double max_residual = 0.0;       // max_n |recon(n) - F(n)| / max(1, |F(n)|)
    double u1_error = 0.0;           // |u(1) - 1|
    double max_u_at_primes = 0.0;    // max_p |u(p)|
    double max_u_off_support = 0.0;  // max |u(n)|, n not squarefull
};
FactorizationCheck check_factorization(const EigenSystem& eigen, const DirichletCharacter* chi,
                                       std::int64_t n_max, const FactorTable& table);

}  // namespace heckelab
