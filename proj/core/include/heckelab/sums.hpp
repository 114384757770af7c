#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "heckelab/dirichlet_series.hpp"
#include "heckelab/eigen.hpp"
#include "heckelab/kfull.hpp"
#include "heckelab/sieve.hpp"

namespace heckelab {

// sum of v(n) over n <= x+1, n = 1 (mod q). v is 1-based with v[n] for
// n = 1..n_max; requires x+1 <= n_max. Compensated accumulation in fixed
// blocks, so results are identical for any thread count.
double progression_sum(std::span<const double> v, std::int64_t x, std::int64_t q,
                       int threads = 0);
double progression_sum(const EigenSystem& eigen, std::int64_t x, std::int64_t q,
                       int threads = 0);

// Least-squares fit of y = A x log x + B x; refuses fewer than 3 points.
struct FitResult {
    double a_xlogx = 0.0;
    double b_x = 0.0;
};
FitResult two_term_fit(std::span<const std::int64_t> xs, std::span<const double> ys);

// Slope of log|residual| against log x over the points with a nonzero
// residual. Reporting metadata only; nothing is asserted against it.
double error_exponent_estimate(std::span<const std::int64_t> xs,
                               std::span<const double> residuals);

// c1 = L^3(1, sym^2 f x chi0) L(1, sym^4 f x chi0) U(1), with the two-cutoff
// truncation brackets propagated into the reported uncertainty. U(1) is the
// partial sum of u(n)/n over n <= u_cutoff for the untwisted correction
// series.
struct C1Result {
    double value = 0.0;
    double bracket = 0.0;
    LValueResult sym2;
    LValueResult sym4;
    double u_at_one = 0.0;
    double u_bracket = 0.0;
    bool positive = false;
};
C1Result compute_c1(std::int64_t q, const EigenSystem& eigen, const FactorTable& table,
                    std::int64_t prime_cutoff, std::int64_t u_cutoff);

// Closed-form ratio c1(q)/c1(1): the product of the removed Euler factors
// at p | q, evaluated at s = 1 from the Satake angles.
double c1_ratio_closed_form(std::int64_t q, const EigenSystem& eigen, const FactorTable& table);

// Theorem-style progression reports. The main term keeps only the x log x
// part, so the rows also carry a two-term fit across the grid; main uses
// c1 x log x phi(q)/q^2 and the equal form prod_{p|q}(1-1/p)^2 / phi(q) is
// cross-checked at build time.
struct ProgressionSumReport {
    std::int64_t x = 0;
    std::int64_t q = 1;
    std::int64_t residue = 1;
    double sum = 0.0;
    double c1 = 0.0;
    double main_term = 0.0;
    double ratio = 0.0;
    double fit_a = 0.0;
    double fit_b = 0.0;
    double bracket = 0.0;
    bool outside_paper_range = false;  // the proved statements assume q >= 100
};

struct TrendReport {
    std::vector<ProgressionSumReport> rows;
    FitResult fit;
    double slope = 0.0;               // observed log-residual slope
    double reference_exponent = 0.0;  // stated error exponent, metadata only
    double fit_target = 0.0;          // c1 phi(q)/q^2, what fit_a estimates
};

TrendReport theorem1_trend(std::span<const double> lambda4, std::int64_t q,
                           std::span<const std::int64_t> x_grid, const C1Result& c1,
                           const FactorTable& table, int threads = 0);

// sum_{n<=x} a(n) lambda^4(n+1) with a evaluated through the k-full split.
double shifted_sum(std::span<const double> lambda4, const KernelFunction& kernel,
                   std::int64_t x, const FactorTable& table, int threads = 0);

// The finite split-and-sieve identity behind the shifted-sum analysis:
// (i) the direct sum, (ii) the head/tail split at k(n) <= H, and (iii) the
// full Mobius rewriting (k-free sieve over d, coprimality sieve over
// delta | kappa) must agree exactly up to rounding.
struct SplitCheckResult {
    double direct = 0.0;
    double head_tail = 0.0;
    double mobius = 0.0;
    double max_rel_residual = 0.0;
};
SplitCheckResult theorem3_split_check(std::span<const double> lambda4,
                                      const KernelFunction& kernel, std::int64_t x, int k,
                                      std::int64_t cap_h, const FactorTable& table);

// c2 as the truncated triple series over k-full kappa, delta | kappa and
// k-free d coprime to kappa, each term weighted by c1(q) phi(q)/q at the
// modulus q = delta kappa d^k. The evaluator receives the modulus and its
// distinct primes (the factorization is known to the caller, and q itself
// can be large).
class C1Evaluator {
  public:
    virtual ~C1Evaluator() = default;
    virtual double at(std::int64_t q, std::span<const std::int64_t> distinct_primes) const = 0;
};

// Default evaluator: c1(q) = c1(1) * closed-form Euler corrections.
class ClosedFormC1 : public C1Evaluator {
  public:
    ClosedFormC1(double c1_base, const EigenSystem& eigen, const FactorTable& table);
    double at(std::int64_t q, std::span<const std::int64_t> distinct_primes) const override;

  private:
    double c1_base_;
    const EigenSystem& eigen_;
    const FactorTable& table_;
};

struct C2Result {
    double value = 0.0;
    double bracket = 0.0;
};
C2Result compute_c2(const KernelFunction& kernel, const C1Evaluator& c1_at,
                    std::int64_t kappa_max, std::int64_t d_max, const FactorTable& table);

struct ShiftedSumReport {
    std::int64_t x = 0;
    int k = 2;
    KernelId kernel = KernelId::const_one;
    double sum = 0.0;
    double c2 = 0.0;
    double main_term = 0.0;
    double ratio = 0.0;
    double fit_a = 0.0;
    double fit_b = 0.0;
    double bracket = 0.0;
};

struct ShiftedTrendReport {
    std::vector<ShiftedSumReport> rows;
    FitResult fit;
    double slope = 0.0;
    double reference_exponent = 0.0;  // (520k+23)/(543k), metadata only
};

ShiftedTrendReport theorem3_trend(std::span<const double> lambda4, const KernelFunction& kernel,
                                  std::span<const std::int64_t> x_grid, const C2Result& c2,
                                  const FactorTable& table, int threads = 0);

}  // namespace heckelab
