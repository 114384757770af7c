#include "heckelab/exact_series.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace heckelab {

namespace {

bigint bigint_pow(std::int64_t base, int e) {
    bigint b = base;
    return boost::multiprecision::pow(b, static_cast<unsigned>(e));
}

// Product of scaled polynomials; the p^{w i} scaling at degree i is
// multiplicative across degrees, so plain coefficient convolution is right.
std::vector<bigint> poly_mul(const std::vector<bigint>& lhs, const std::vector<bigint>& rhs) {
    std::vector<bigint> out(lhs.size() + rhs.size() - 1, 0);
    for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < rhs.size(); ++j) out[i + j] += lhs[i] * rhs[j];
    return out;
}

}  // namespace

ScaledIntSeries ScaledIntSeries::zero(std::int64_t n_max, int scale_pow) {
    ScaledIntSeries s;
    s.n_max = n_max;
    s.scale_pow = scale_pow;
    s.a.assign(static_cast<std::size_t>(n_max) + 1, 0);
    return s;
}

double ScaledIntSeries::unscaled(std::int64_t n) const {
    double num = a[static_cast<std::size_t>(n)].convert_to<double>();
    return num / std::pow(static_cast<double>(n), scale_pow);
}

ScaledIntSeries convolve_exact(const ScaledIntSeries& lhs, const ScaledIntSeries& rhs) {
    if (lhs.n_max != rhs.n_max || lhs.scale_pow != rhs.scale_pow)
        throw std::invalid_argument("convolve_exact: mismatched range or scale");
    auto out = ScaledIntSeries::zero(lhs.n_max, lhs.scale_pow);
    for (std::int64_t d = 1; d <= lhs.n_max; ++d) {
        const bigint& ad = lhs.a[static_cast<std::size_t>(d)];
        if (ad == 0) continue;
        for (std::int64_t m = 1; d * m <= lhs.n_max; ++m) {
            const bigint& bm = rhs.a[static_cast<std::size_t>(m)];
            if (bm != 0) out.a[static_cast<std::size_t>(d * m)] += ad * bm;
        }
    }
    return out;
}

ScaledIntSeries divide_exact(const ScaledIntSeries& lhs, const ScaledIntSeries& rhs) {
    if (lhs.n_max != rhs.n_max || lhs.scale_pow != rhs.scale_pow)
        throw std::invalid_argument("divide_exact: mismatched range or scale");
    if (rhs.a[1] != 1)
        throw std::invalid_argument("divide_exact: divisor must have a(1) = 1");
    auto out = ScaledIntSeries::zero(lhs.n_max, lhs.scale_pow);
    std::vector<bigint> acc(static_cast<std::size_t>(lhs.n_max) + 1, 0);
    for (std::int64_t n = 1; n <= lhs.n_max; ++n) {
        bigint qn = lhs.a[static_cast<std::size_t>(n)] - acc[static_cast<std::size_t>(n)];
        out.a[static_cast<std::size_t>(n)] = qn;
        if (qn != 0)
            for (std::int64_t m = 2; n * m <= lhs.n_max; ++m) {
                const bigint& bm = rhs.a[static_cast<std::size_t>(m)];
                if (bm != 0) acc[static_cast<std::size_t>(n * m)] += qn * bm;
            }
    }
    return out;
}

std::vector<bigint> exact_sym_denominator(int m, int128 tau_p, std::int64_t p, int w) {
    if (m != 2 && m != 4) throw std::invalid_argument("exact_sym_denominator: m must be 2 or 4");
    if (w < 11 * m / 2)
        throw std::invalid_argument("exact_sym_denominator: scale too small for m");
    const bigint t = bigint(to_string(tau_p));
    const bigint tt = t * t;                  // tau_p^2 = lambda(p)^2 p^11
    const bigint p11 = bigint_pow(p, 11);
    const bigint pw = bigint_pow(p, w);

    // (1 - X), scaled
    std::vector<bigint> f1{1, -pw};
    // (1 - (lambda^2 - 2) X + X^2), scaled: lambda^2 - 2 = (tt - 2 p11)/p11
    std::vector<bigint> f2{1, -(tt - 2 * p11) * bigint_pow(p, w - 11), pw * pw};
    auto denom = poly_mul(f1, f2);
    if (m == 4) {
        // (1 - (lambda^4 - 4 lambda^2 + 2) X + X^2), scaled; the middle
        // coefficient is (tt^2 - 4 tt p11 + 2 p11^2)/p22.
        std::vector<bigint> f4{1, -(tt * tt - 4 * tt * p11 + 2 * p11 * p11) *
                                      bigint_pow(p, w - 22),
                               pw * pw};
        denom = poly_mul(denom, f4);
    }
    return denom;
}

std::vector<bigint> exact_sym_local(int m, int128 tau_p, std::int64_t p, int w, int j_max) {
    auto denom = exact_sym_denominator(m, tau_p, p, w);
    std::vector<bigint> b(static_cast<std::size_t>(j_max) + 1, 0);
    b[0] = 1;
    for (int j = 1; j <= j_max; ++j) {
        bigint s = 0;
        for (int i = 1; i <= std::min<int>(j, static_cast<int>(denom.size()) - 1); ++i)
            s += denom[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j - i)];
        b[static_cast<std::size_t>(j)] = -s;
    }
    return b;
}

ScaledIntSeries build_exact_F(std::span<const int128> tau, std::int64_t n_max) {
    if (static_cast<std::int64_t>(tau.size()) <= n_max)
        throw std::invalid_argument("build_exact_F: tau table shorter than n_max");
    auto out = ScaledIntSeries::zero(n_max, 22);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        bigint t = bigint(to_string(tau[static_cast<std::size_t>(n)]));
        bigint t2 = t * t;
        out.a[static_cast<std::size_t>(n)] = t2 * t2;  // lambda^4(n) n^22 = tau(n)^4
    }
    return out;
}

ScaledIntSeries build_exact_principal_l(std::int64_t q, std::int64_t n_max) {
    auto out = ScaledIntSeries::zero(n_max, 22);
    for (std::int64_t n = 1; n <= n_max; ++n)
        if (std::gcd(n, q) == 1) out.a[static_cast<std::size_t>(n)] = bigint_pow(n, 22);
    return out;
}

ScaledIntSeries build_exact_sym(std::span<const int128> tau, int m, std::int64_t q,
                                std::int64_t n_max, const FactorTable& table) {
    auto out = ScaledIntSeries::zero(n_max, 22);
    out.a[1] = 1;
    for (std::int64_t p : table.primes()) {
        if (p > n_max) break;
        int j_max = 0;
        for (std::int64_t pe = p; pe <= n_max; pe *= p) {
            ++j_max;
            if (pe > n_max / p) break;
        }
        if (q % p == 0) continue;  // principal twist kills p | q
        auto loc = exact_sym_local(m, tau[static_cast<std::size_t>(p)], p, 22, j_max);
        std::int64_t pe = 1;
        for (int j = 1; j <= j_max; ++j) {
            pe *= p;
            out.a[static_cast<std::size_t>(pe)] = loc[static_cast<std::size_t>(j)];
        }
    }
    for (std::int64_t n = 2; n <= n_max; ++n) {
        std::int64_t p = table.spf(n), pe = p, mm = n / p;
        while (mm % p == 0) {
            mm /= p;
            pe *= p;
        }
        if (mm > 1)
            out.a[static_cast<std::size_t>(n)] =
                out.a[static_cast<std::size_t>(pe)] * out.a[static_cast<std::size_t>(mm)];
    }
    return out;
}

ScaledIntSeries extract_exact_U(std::span<const int128> tau, std::int64_t q,
                                std::int64_t n_max, const FactorTable& table) {
    auto l = build_exact_principal_l(q, n_max);
    auto sym2 = build_exact_sym(tau, 2, q, n_max, table);
    auto sym4 = build_exact_sym(tau, 4, q, n_max, table);
    auto rem = build_exact_F(tau, n_max);
    rem = divide_exact(rem, l);
    rem = divide_exact(rem, l);
    rem = divide_exact(rem, sym2);
    rem = divide_exact(rem, sym2);
    rem = divide_exact(rem, sym2);
    rem = divide_exact(rem, sym4);
    return rem;
}

std::vector<bigint> cyclotomic_polynomial(std::int64_t level) {
    if (level < 1) throw std::invalid_argument("cyclotomic_polynomial: level must be >= 1");
    static std::map<std::int64_t, std::vector<bigint>> memo;
    auto it = memo.find(level);
    if (it != memo.end()) return it->second;

    // X^level - 1 divided by all proper-divisor cyclotomics; the divisors
    // are monic, so the long division is exact over the integers.
    std::vector<bigint> num(static_cast<std::size_t>(level) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(level)] = 1;
    for (std::int64_t d = 1; d < level; ++d) {
        if (level % d != 0) continue;
        auto phi_d = cyclotomic_polynomial(d);
        std::vector<bigint> quot(num.size() - phi_d.size() + 1, 0);
        for (std::size_t k = quot.size(); k-- > 0;) {
            bigint lead = num[k + phi_d.size() - 1];
            quot[k] = lead;
            if (lead != 0)
                for (std::size_t i = 0; i < phi_d.size(); ++i) num[k + i] -= lead * phi_d[i];
        }
        num = std::move(quot);
    }
    memo[level] = num;
    return num;
}

RootOfUnitySum::RootOfUnitySum(std::int64_t level) : level_(level) {
    if (level < 1) throw std::invalid_argument("RootOfUnitySum: level must be >= 1");
    c_.assign(static_cast<std::size_t>(level), 0);
}

void RootOfUnitySum::add(std::int64_t expo, const bigint& coeff) {
    std::int64_t e = expo % level_;
    if (e < 0) e += level_;
    c_[static_cast<std::size_t>(e)] += coeff;
}

bool RootOfUnitySum::is_zero() const {
    bool any = false;
    for (const auto& v : c_)
        if (v != 0) any = true;
    if (!any) return true;
    // sum c_k zeta^k vanishes iff Phi_level divides sum c_k X^k; Phi is
    // monic, so reduction from the top degree stays in the integers. A
    // nonzero remainder of degree below deg(Phi) cannot vanish at zeta.
    auto phi = cyclotomic_polynomial(level_);
    const std::size_t deg_phi = phi.size() - 1;
    std::vector<bigint> rem(c_.begin(), c_.end());
    for (std::size_t k = rem.size(); k-- > deg_phi;) {
        bigint lead = rem[k];
        if (lead == 0) continue;
        for (std::size_t i = 0; i <= deg_phi; ++i) rem[k - deg_phi + i] -= lead * phi[i];
    }
    for (const auto& v : rem)
        if (v != 0) return false;
    return true;
}

namespace {

struct InducedContext {
    std::int64_t q = 1;
    std::int64_t q1 = 1;
    DirichletCharacter chi;
    DirichletCharacter star;
    std::vector<std::int64_t> extra_primes;  // p | q, p not | q1
    std::int64_t level = 1;
    std::int64_t chi_scale = 1;   // chi exponent -> level scale
    std::int64_t star_scale = 1;  // star exponent -> level scale
};

InducedContext make_context(const CharacterGroup& group, const DirichletCharacter& chi) {
    InducedContext ctx;
    ctx.q = chi.modulus();
    ctx.q1 = chi.conductor();
    ctx.chi = chi;
    ctx.star = group.factor_through(chi).second;
    std::int64_t rest = ctx.q;
    for (std::int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p == 0) {
            if (ctx.q1 % p != 0) ctx.extra_primes.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    }
    if (rest > 1 && ctx.q1 % rest != 0) ctx.extra_primes.push_back(rest);
    ctx.level = std::lcm(ctx.chi.denom(), ctx.star.denom());
    ctx.chi_scale = ctx.level / ctx.chi.denom();
    ctx.star_scale = ctx.level / ctx.star.denom();
    return ctx;
}

}  // namespace

InducedCheckResult check_induced_l_identity(const CharacterGroup& group,
                                            const DirichletCharacter& chi,
                                            std::int64_t n_max) {
    auto ctx = make_context(group, chi);
    InducedCheckResult result;
    const std::size_t n_extra = ctx.extra_primes.size();
    for (std::int64_t n = 1; n <= n_max; ++n) {
        RootOfUnitySum sum(ctx.level);
        // Right side: correction coefficients live on squarefree products
        // of the extra primes; coefficient at d is mu(d) chi*(d).
        for (std::size_t mask = 0; mask < (std::size_t{1} << n_extra); ++mask) {
            std::int64_t d = 1;
            int sign = 1;
            bool divides = true;
            for (std::size_t i = 0; i < n_extra; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    d *= ctx.extra_primes[i];
                    sign = -sign;
                }
            }
            if (n % d != 0) divides = false;
            if (!divides) continue;
            auto e_d = ctx.star.expo(d);
            auto e_rest = ctx.star.expo(n / d);
            if (e_d < 0 || e_rest < 0) continue;
            sum.add((e_d + e_rest) * ctx.star_scale, sign);
        }
        // Left side.
        auto e_chi = ctx.chi.expo(n);
        if (e_chi >= 0) sum.add(e_chi * ctx.chi_scale, -1);
        if (!sum.is_zero()) {
            result.exact = false;
            result.first_failure = n;
            return result;
        }
    }
    return result;
}

InducedCheckResult check_induced_sym_identity(std::span<const int128> tau,
                                              const CharacterGroup& group,
                                              const DirichletCharacter& chi, int m,
                                              std::int64_t n_max, const FactorTable& table) {
    const int w = (m == 2) ? 11 : 22;
    auto ctx = make_context(group, chi);

    // Exact scaled symmetric-power coefficients S(n) = lambda_{sym^m}(n) n^w.
    std::vector<bigint> sym(static_cast<std::size_t>(n_max) + 1, 0);
    sym[1] = 1;
    for (std::int64_t p : table.primes()) {
        if (p > n_max) break;
        int j_max = 0;
        for (std::int64_t pe = p; pe <= n_max; pe *= p) {
            ++j_max;
            if (pe > n_max / p) break;
        }
        auto loc = exact_sym_local(m, tau[static_cast<std::size_t>(p)], p, w, j_max);
        std::int64_t pe = 1;
        for (int j = 1; j <= j_max; ++j) {
            pe *= p;
            sym[static_cast<std::size_t>(pe)] = loc[static_cast<std::size_t>(j)];
        }
    }
    for (std::int64_t n = 2; n <= n_max; ++n) {
        std::int64_t p = table.spf(n), pe = p, mm = n / p;
        while (mm % p == 0) {
            mm /= p;
            pe *= p;
        }
        if (mm > 1)
            sym[static_cast<std::size_t>(n)] =
                sym[static_cast<std::size_t>(pe)] * sym[static_cast<std::size_t>(mm)];
    }

    // Scaled correction denominators at each extra prime.
    std::vector<std::vector<bigint>> corr;
    for (std::int64_t p : ctx.extra_primes)
        corr.push_back(exact_sym_denominator(m, tau[static_cast<std::size_t>(p)], p, w));

    InducedCheckResult result;
    const std::size_t n_extra = ctx.extra_primes.size();
    std::vector<int> vmax(n_extra, 0);
    std::vector<int> e(n_extra, 0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        RootOfUnitySum sum(ctx.level);
        for (std::size_t i = 0; i < n_extra; ++i) {
            std::int64_t rest = n;
            int v = 0;
            while (rest % ctx.extra_primes[i] == 0 && v <= m + 1) {
                rest /= ctx.extra_primes[i];
                ++v;
            }
            vmax[i] = std::min(v, m + 1);
            e[i] = 0;
        }
        // Odometer over correction exponents e_i <= vmax[i].
        for (;;) {
            std::int64_t d = 1;
            bigint coeff = 1;
            std::int64_t root = 0;
            for (std::size_t i = 0; i < n_extra; ++i) {
                for (int j = 0; j < e[i]; ++j) d *= ctx.extra_primes[i];
                coeff *= corr[i][static_cast<std::size_t>(e[i])];
                root += static_cast<std::int64_t>(e[i]) * ctx.star.expo(ctx.extra_primes[i]);
            }
            auto e_rest = ctx.star.expo(n / d);
            if (e_rest >= 0 && coeff != 0) {
                const bigint& s = sym[static_cast<std::size_t>(n / d)];
                if (s != 0) sum.add((root + e_rest) * ctx.star_scale, coeff * s);
            }
            std::size_t i = 0;
            while (i < n_extra && e[i] == vmax[i]) {
                e[i] = 0;
                ++i;
            }
            if (i == n_extra) break;
            ++e[i];
        }
        auto e_chi = ctx.chi.expo(n);
        if (e_chi >= 0 && sym[static_cast<std::size_t>(n)] != 0)
            sum.add(e_chi * ctx.chi_scale, -sym[static_cast<std::size_t>(n)]);
        if (!sum.is_zero()) {
            result.exact = false;
            result.first_failure = n;
            return result;
        }
    }
    return result;
}

}  // namespace heckelab
