#include "heckelab/sums.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heckelab/parallel.hpp"

namespace heckelab {

double progression_sum(std::span<const double> v, std::int64_t x, std::int64_t q,
                       int threads) {
    if (x < 1) throw std::invalid_argument("progression_sum: x must be >= 1");
    if (q < 1) throw std::invalid_argument("progression_sum: q must be >= 1");
    if (x + 1 >= static_cast<std::int64_t>(v.size()))
        throw std::out_of_range("progression_sum: needs values up to x+1 = " +
                                std::to_string(x + 1) + ", table has " +
                                std::to_string(v.size() - 1));
    // Terms n = 1 + i q <= x + 1.
    std::int64_t count = x / q + 1;
    return parallel_sum(0, count, threads,
                        [&](std::int64_t i) { return v[static_cast<std::size_t>(1 + i * q)]; });
}

double progression_sum(const EigenSystem& eigen, std::int64_t x, std::int64_t q, int threads) {
    auto lambda4 = eigen.lambda4_table();
    return progression_sum(lambda4, x, q, threads);
}

FitResult two_term_fit(std::span<const std::int64_t> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("two_term_fit: mismatched grid and values");
    if (xs.size() < 3)
        throw std::invalid_argument("two_term_fit: needs at least 3 grid points, got " +
                                    std::to_string(xs.size()));
    // Normal equations for y ~ A u + B w with u = x log x, w = x.
    double suu = 0, suw = 0, sww = 0, suy = 0, swy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double xd = static_cast<double>(xs[i]);
        double u = xd * std::log(xd);
        double w = xd;
        suu += u * u;
        suw += u * w;
        sww += w * w;
        suy += u * ys[i];
        swy += w * ys[i];
    }
    double det = suu * sww - suw * suw;
    if (det == 0.0) throw std::invalid_argument("two_term_fit: singular grid");
    FitResult fit;
    fit.a_xlogx = (suy * sww - swy * suw) / det;
    fit.b_x = (swy * suu - suy * suw) / det;
    return fit;
}

double error_exponent_estimate(std::span<const std::int64_t> xs,
                               std::span<const double> residuals) {
    if (xs.size() != residuals.size())
        throw std::invalid_argument("error_exponent_estimate: mismatched inputs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = std::fabs(residuals[i]);
        if (r <= 0.0) continue;
        double lx = std::log(static_cast<double>(xs[i]));
        double ly = std::log(r);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    double det = n * sxx - sx * sx;
    if (det == 0.0) return 0.0;
    return (n * sxy - sx * sy) / det;
}

C1Result compute_c1(std::int64_t q, const EigenSystem& eigen, const FactorTable& table,
                    std::int64_t prime_cutoff, std::int64_t u_cutoff) {
    if (prime_cutoff < 1000)
        throw std::invalid_argument("compute_c1: prime cutoff must be >= 1000");
    if (u_cutoff < 10000)
        throw std::invalid_argument("compute_c1: U(1) cutoff must be >= 10000");
    C1Result res;
    res.sym2 = l_value_at_one(SymPowerKind::sym2, q, prime_cutoff, eigen, table);
    res.sym4 = l_value_at_one(SymPowerKind::sym4, q, prime_cutoff, eigen, table);

    auto u = extract_U(eigen, nullptr, u_cutoff, table);
    CompensatedSum s;
    double at_half = 0.0;
    const std::int64_t half = u_cutoff / 2;
    for (std::int64_t n = 1; n <= u_cutoff; ++n) {
        s.add(u.u[static_cast<std::size_t>(n)].real() / static_cast<double>(n));
        if (n == half) at_half = s.value();
    }
    res.u_at_one = s.value();
    res.u_bracket = std::fabs(res.u_at_one - at_half);

    double l2 = res.sym2.value;
    res.value = l2 * l2 * l2 * res.sym4.value * res.u_at_one;
    double rel = 0.0;
    if (res.sym2.value != 0.0) rel += 3.0 * std::fabs(res.sym2.bracket / res.sym2.value);
    if (res.sym4.value != 0.0) rel += std::fabs(res.sym4.bracket / res.sym4.value);
    if (res.u_at_one != 0.0) rel += std::fabs(res.u_bracket / res.u_at_one);
    res.bracket = std::fabs(res.value) * rel;
    res.positive = res.sym2.value > 0.0 && res.sym4.value > 0.0 && res.u_at_one > 0.0;
    return res;
}

double c1_ratio_closed_form(std::int64_t q, const EigenSystem& eigen,
                            const FactorTable& table) {
    double ratio = 1.0;
    for (const auto& [p, e] : table.factorize(q)) {
        double theta = eigen.satake(p).theta;
        double x = 1.0 / static_cast<double>(p);
        double d2 = (1.0 - x) * (1.0 - 2.0 * std::cos(2.0 * theta) * x + x * x);
        double d4 = d2 * (1.0 - 2.0 * std::cos(4.0 * theta) * x + x * x);
        ratio *= d2 * d2 * d2 * d4;
    }
    return ratio;
}

namespace {

double phi_over_q(std::int64_t q, const FactorTable& table) {
    double r = 1.0;
    for (const auto& [p, e] : table.factorize(q)) r *= 1.0 - 1.0 / static_cast<double>(p);
    return r;
}

}  // namespace

TrendReport theorem1_trend(std::span<const double> lambda4, std::int64_t q,
                           std::span<const std::int64_t> x_grid, const C1Result& c1,
                           const FactorTable& table, int threads) {
    if (x_grid.size() < 3)
        throw std::invalid_argument("theorem1_trend: grid shorter than 3 points, fit refused");
    TrendReport rep;
    // phi(q)/q^2 equals prod_{p|q}(1-1/p)^2 / phi(q); both forms are
    // evaluated and must agree to rounding.
    double phi = (q == 1) ? 1.0 : static_cast<double>(table.totient(q));
    double form_a = phi / (static_cast<double>(q) * static_cast<double>(q));
    double pq = phi_over_q(q, table);
    double form_b = pq * pq / phi;
    if (std::fabs(form_a - form_b) > 1e-12 * std::fabs(form_a))
        throw std::logic_error("theorem1_trend: phi(q)/q^2 forms disagree beyond rounding");

    rep.fit_target = c1.value * form_a;
    rep.reference_exponent = table.is_prime(q) ? 20.0 / 23.0 : 158.0 / 181.0;

    std::vector<double> sums;
    std::vector<double> residuals;
    for (std::int64_t x : x_grid) {
        ProgressionSumReport row;
        row.x = x;
        row.q = q;
        row.sum = progression_sum(lambda4, x, q, threads);
        row.c1 = c1.value;
        double xd = static_cast<double>(x);
        row.main_term = rep.fit_target * xd * std::log(xd);
        row.ratio = row.sum / row.main_term;
        row.bracket = c1.bracket;
        row.outside_paper_range = q < 100;
        rep.rows.push_back(row);
        sums.push_back(row.sum);
        residuals.push_back(row.sum - row.main_term);
    }
    std::vector<std::int64_t> xs(x_grid.begin(), x_grid.end());
    rep.fit = two_term_fit(xs, sums);
    rep.slope = error_exponent_estimate(xs, residuals);
    for (auto& row : rep.rows) {
        row.fit_a = rep.fit.a_xlogx;
        row.fit_b = rep.fit.b_x;
    }
    return rep;
}

double shifted_sum(std::span<const double> lambda4, const KernelFunction& kernel,
                   std::int64_t x, const FactorTable& table, int threads) {
    if (x < 1) throw std::invalid_argument("shifted_sum: x must be >= 1");
    if (x + 1 >= static_cast<std::int64_t>(lambda4.size()))
        throw std::out_of_range("shifted_sum: needs lambda^4 up to x+1");
    if (table.n_max() < x) throw std::out_of_range("shifted_sum: factor table shorter than x");
    return parallel_sum(1, x + 1, threads, [&](std::int64_t n) {
        auto a = kernel.eval(n, table);
        return a == 0 ? 0.0
                      : static_cast<double>(a) * lambda4[static_cast<std::size_t>(n + 1)];
    });
}

SplitCheckResult theorem3_split_check(std::span<const double> lambda4,
                                      const KernelFunction& kernel, std::int64_t x, int k,
                                      std::int64_t cap_h, const FactorTable& table) {
    if (cap_h < 1 || cap_h > x)
        throw std::invalid_argument("theorem3_split_check: need 1 <= H <= x");
    SplitCheckResult res;
    res.direct = shifted_sum(lambda4, kernel, x, table);

    // (ii) head/tail partition by the k-full part.
    CompensatedSum head, tail;
    for (std::int64_t n = 1; n <= x; ++n) {
        auto split = kfull_split(n, k, table);
        double term = static_cast<double>(kernel.base(split.k_part, table)) *
                      lambda4[static_cast<std::size_t>(n + 1)];
        if (split.k_part <= cap_h)
            head.add(term);
        else
            tail.add(term);
    }
    res.head_tail = head.value() + tail.value();

    // (iii) Mobius rewriting of the head: kappa runs over k-full numbers
    // <= H; the k-free condition on the cofactor becomes the mu(d) sieve
    // over d with d^k dividing it, and the coprimality condition on the
    // remaining m becomes the mu(delta) sieve over delta | kappa. The
    // d-range splits at H^{1/k}; past it the inner sums keep the plain
    // coprime-m form.
    CompensatedSum mobius_head;
    const std::int64_t d_head_max = kth_root_floor(cap_h, k);
    for (std::int64_t kappa : enumerate_kfull(cap_h, k)) {
        double a_kappa = static_cast<double>(kernel.base(kappa, table));
        if (a_kappa == 0.0) continue;
        auto delta_divisors = table.divisors(kappa);
        for (std::int64_t d = 1;; ++d) {
            std::int64_t dk = 1;
            bool overflow = false;
            for (int i = 0; i < k; ++i) {
                if (dk > x / d) {
                    overflow = true;
                    break;
                }
                dk *= d;
            }
            if (overflow || kappa > x / dk) break;
            int mu_d = table.mobius(d);
            if (mu_d == 0 || std::gcd(d, kappa) != 1) continue;
            if (d <= d_head_max) {
                // Sigma_1^*: unroll (m, kappa) = 1 through delta | kappa.
                for (std::int64_t delta : delta_divisors) {
                    int mu_delta = table.mobius(delta);
                    if (mu_delta == 0) continue;
                    std::int64_t modulus = delta * kappa * dk;
                    CompensatedSum inner;
                    for (std::int64_t nn = modulus; nn <= x; nn += modulus)
                        inner.add(lambda4[static_cast<std::size_t>(nn + 1)]);
                    mobius_head.add(a_kappa * mu_d * mu_delta * inner.value());
                }
            } else {
                // Sigma_2^*: keep the coprimality condition on m directly.
                std::int64_t modulus = kappa * dk;
                CompensatedSum inner;
                for (std::int64_t m = 1; m <= x / modulus; ++m)
                    if (std::gcd(m, kappa) == 1)
                        inner.add(lambda4[static_cast<std::size_t>(m * modulus + 1)]);
                mobius_head.add(a_kappa * mu_d * inner.value());
            }
        }
    }
    res.mobius = mobius_head.value() + tail.value();

    double scale = std::max(1.0, std::fabs(res.direct));
    res.max_rel_residual = std::max(std::fabs(res.head_tail - res.direct),
                                    std::fabs(res.mobius - res.direct)) /
                           scale;
    return res;
}

ClosedFormC1::ClosedFormC1(double c1_base, const EigenSystem& eigen, const FactorTable& table)
    : c1_base_(c1_base), eigen_(eigen), table_(table) {}

double ClosedFormC1::at(std::int64_t, std::span<const std::int64_t> distinct_primes) const {
    double value = c1_base_;
    for (std::int64_t p : distinct_primes) {
        double theta = eigen_.satake(p).theta;
        double x = 1.0 / static_cast<double>(p);
        double d2 = (1.0 - x) * (1.0 - 2.0 * std::cos(2.0 * theta) * x + x * x);
        double d4 = d2 * (1.0 - 2.0 * std::cos(4.0 * theta) * x + x * x);
        value *= d2 * d2 * d2 * d4;
    }
    return value;
}

namespace {

double c2_partial(const KernelFunction& kernel, const C1Evaluator& c1_at,
                  std::int64_t kappa_max, std::int64_t d_max, const FactorTable& table) {
    const int k = kernel.k;
    CompensatedSum total;
    for (std::int64_t kappa : enumerate_kfull(kappa_max, k)) {
        double a_kappa = static_cast<double>(kernel.base(kappa, table));
        if (a_kappa == 0.0) continue;
        std::vector<std::int64_t> kappa_primes;
        for (const auto& [p, e] : table.factorize(kappa)) kappa_primes.push_back(p);

        CompensatedSum inner;
        for (std::int64_t d = 1; d <= d_max; ++d) {
            int mu_d = table.mobius(d);
            if (mu_d == 0 || std::gcd(d, kappa) != 1) continue;
            std::vector<std::int64_t> primes = kappa_primes;
            for (const auto& [p, e] : table.factorize(d)) primes.push_back(p);
            // Weight of one modulus q = delta kappa d^k: the theorem-1 main
            // term carries c1(q) phi(q)/q^2, and 1/q splits into the 1/kappa,
            // 1/delta, 1/d^k factors of the outer sums. The remaining
            // c1(q) phi(q)/q sees only the distinct primes of q, which do
            // not depend on delta.
            double dk = static_cast<double>(d);
            for (int i = 1; i < k; ++i) dk *= static_cast<double>(d);
            double phi_q = 1.0;
            for (std::int64_t p : primes) phi_q *= 1.0 - 1.0 / static_cast<double>(p);

            for (std::int64_t delta : table.divisors(kappa)) {
                int mu_delta = table.mobius(delta);
                if (mu_delta == 0) continue;
                int128 q128 = static_cast<int128>(delta) * kappa * d;
                for (int i = 1; i < k; ++i) q128 *= d;
                std::int64_t q = (q128 > static_cast<int128>(INT64_MAX))
                                     ? INT64_MAX
                                     : static_cast<std::int64_t>(q128);
                inner.add(static_cast<double>(mu_d) / dk *
                          (static_cast<double>(mu_delta) / static_cast<double>(delta)) * phi_q *
                          c1_at.at(q, primes));
            }
        }
        total.add(a_kappa / static_cast<double>(kappa) * inner.value());
    }
    return total.value();
}

}  // namespace

C2Result compute_c2(const KernelFunction& kernel, const C1Evaluator& c1_at,
                    std::int64_t kappa_max, std::int64_t d_max, const FactorTable& table) {
    if (kappa_max < 100 || d_max < 100)
        throw std::invalid_argument("compute_c2: truncation bounds must be >= 100");
    C2Result res;
    res.value = c2_partial(kernel, c1_at, kappa_max, d_max, table);
    double half = c2_partial(kernel, c1_at, kappa_max / 2, d_max / 2, table);
    res.bracket = std::fabs(res.value - half);
    return res;
}

ShiftedTrendReport theorem3_trend(std::span<const double> lambda4,
                                  const KernelFunction& kernel,
                                  std::span<const std::int64_t> x_grid, const C2Result& c2,
                                  const FactorTable& table, int threads) {
    if (x_grid.size() < 3)
        throw std::invalid_argument("theorem3_trend: grid shorter than 3 points, fit refused");
    ShiftedTrendReport rep;
    rep.reference_exponent =
        (520.0 * kernel.k + 23.0) / (543.0 * kernel.k);
    std::vector<double> sums;
    std::vector<double> residuals;
    for (std::int64_t x : x_grid) {
        ShiftedSumReport row;
        row.x = x;
        row.k = kernel.k;
        row.kernel = kernel.id;
        row.sum = shifted_sum(lambda4, kernel, x, table, threads);
        row.c2 = c2.value;
        double xd = static_cast<double>(x);
        row.main_term = c2.value * xd * std::log(xd);
        row.ratio = row.main_term != 0.0 ? row.sum / row.main_term : 0.0;
        row.bracket = c2.bracket;
        rep.rows.push_back(row);
        sums.push_back(row.sum);
        residuals.push_back(row.sum - row.main_term);
    }
    std::vector<std::int64_t> xs(x_grid.begin(), x_grid.end());
    rep.fit = two_term_fit(xs, sums);
    rep.slope = error_exponent_estimate(xs, residuals);
    for (auto& row : rep.rows) {
        row.fit_a = rep.fit.a_xlogx;
        row.fit_b = rep.fit.b_x;
    }
    return rep;
}

}  // namespace heckelab
