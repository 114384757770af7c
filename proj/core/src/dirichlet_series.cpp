#include "heckelab/dirichlet_series.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "heckelab/numeric.hpp"

namespace heckelab {

namespace {

void require_same_range(const FormalDirichletSeries& lhs, const FormalDirichletSeries& rhs) {
    if (lhs.n_max != rhs.n_max)
        throw std::invalid_argument("dirichlet series ranges differ: " +
                                    std::to_string(lhs.n_max) + " vs " +
                                    std::to_string(rhs.n_max));
}

}  // namespace

FormalDirichletSeries FormalDirichletSeries::zero(std::int64_t n_max, std::string label) {
    FormalDirichletSeries s;
    s.n_max = n_max;
    s.a.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    s.label = std::move(label);
    return s;
}

FormalDirichletSeries FormalDirichletSeries::ones(std::int64_t n_max, std::string label) {
    auto s = zero(n_max, std::move(label));
    for (std::int64_t n = 1; n <= n_max; ++n) s.a[static_cast<std::size_t>(n)] = 1.0;
    return s;
}

FormalDirichletSeries FormalDirichletSeries::identity(std::int64_t n_max, std::string label) {
    auto s = zero(n_max, std::move(label));
    s.a[1] = 1.0;
    return s;
}

FormalDirichletSeries dirichlet_convolve(const FormalDirichletSeries& lhs,
                                         const FormalDirichletSeries& rhs) {
    require_same_range(lhs, rhs);
    auto out = FormalDirichletSeries::zero(lhs.n_max, lhs.label + "*" + rhs.label);
    const std::int64_t n_max = lhs.n_max;
    for (std::int64_t d = 1; d <= n_max; ++d) {
        cplx ad = lhs.a[static_cast<std::size_t>(d)];
        if (ad == 0.0) continue;
        for (std::int64_t m = 1; d * m <= n_max; ++m)
            out.a[static_cast<std::size_t>(d * m)] += ad * rhs.a[static_cast<std::size_t>(m)];
    }
    return out;
}

FormalDirichletSeries dirichlet_divide(const FormalDirichletSeries& lhs,
                                       const FormalDirichletSeries& rhs) {
    require_same_range(lhs, rhs);
    if (rhs.a[1] == 0.0)
        throw std::invalid_argument("dirichlet_divide: divisor has a(1) = 0");
    const std::int64_t n_max = lhs.n_max;
    auto out = FormalDirichletSeries::zero(n_max, lhs.label + "/" + rhs.label);
    // acc(n) collects sum_{d | n, d < n} q(d) rhs(n/d); q(n) is final once
    // every smaller index has contributed, so the loop is sequential in n.
    std::vector<cplx> acc(static_cast<std::size_t>(n_max) + 1, 0.0);
    const cplx inv_b1 = 1.0 / rhs.a[1];
    for (std::int64_t n = 1; n <= n_max; ++n) {
        cplx qn = (lhs.a[static_cast<std::size_t>(n)] - acc[static_cast<std::size_t>(n)]) * inv_b1;
        out.a[static_cast<std::size_t>(n)] = qn;
        if (qn != 0.0)
            for (std::int64_t m = 2; n * m <= n_max; ++m)
                acc[static_cast<std::size_t>(n * m)] += qn * rhs.a[static_cast<std::size_t>(m)];
    }
    return out;
}

FormalDirichletSeries build_from_euler(const LocalFactorFn& local, std::int64_t n_max,
                                       const FactorTable& table, std::string label) {
    if (table.n_max() < n_max)
        throw std::invalid_argument("build_from_euler: factor table shorter than n_max");
    auto out = FormalDirichletSeries::zero(n_max, std::move(label));
    out.a[1] = 1.0;
    for (std::int64_t p : table.primes()) {
        if (p > n_max) break;
        int j_max = 0;
        for (std::int64_t pe = p; pe <= n_max; pe *= p) {
            ++j_max;
            if (pe > n_max / p) break;
        }
        auto loc = local(p, j_max);
        if (loc.empty() || loc[0] != 1.0)
            throw std::invalid_argument("build_from_euler: local factor at p=" +
                                        std::to_string(p) + " lacks constant term 1");
        std::int64_t pe = 1;
        for (int j = 1; j <= j_max; ++j) {
            pe *= p;
            out.a[static_cast<std::size_t>(pe)] = loc[static_cast<std::size_t>(j)];
        }
    }
    for (std::int64_t n = 2; n <= n_max; ++n) {
        std::int64_t p = table.spf(n), pe = p, m = n / p;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        if (m > 1)
            out.a[static_cast<std::size_t>(n)] =
                out.a[static_cast<std::size_t>(pe)] * out.a[static_cast<std::size_t>(m)];
    }
    return out;
}

FormalDirichletSeries build_l_series(const DirichletCharacter& chi, std::int64_t n_max) {
    auto out = FormalDirichletSeries::zero(n_max, "L[q=" + std::to_string(chi.modulus()) +
                                                      "#" + std::to_string(chi.index()) + "]");
    for (std::int64_t n = 1; n <= n_max; ++n)
        out.a[static_cast<std::size_t>(n)] = chi.value(n);
    return out;
}

FormalDirichletSeries build_principal_l_series(std::int64_t q, std::int64_t n_max) {
    auto out = FormalDirichletSeries::zero(n_max, "L[chi0 q=" + std::to_string(q) + "]");
    for (std::int64_t n = 1; n <= n_max; ++n)
        out.a[static_cast<std::size_t>(n)] = (std::gcd(n, q) == 1) ? 1.0 : 0.0;
    return out;
}

FormalDirichletSeries build_sym_series(const EigenSystem& eigen, int m,
                                       const DirichletCharacter* chi, std::int64_t n_max,
                                       const FactorTable& table) {
    if (m != 2 && m != 4)
        throw std::invalid_argument("build_sym_series: m must be 2 or 4");
    auto local = [&](std::int64_t p, int j_max) {
        std::vector<cplx> loc(static_cast<std::size_t>(j_max) + 1, 0.0);
        loc[0] = 1.0;
        if (chi != nullptr && chi->expo(p) < 0) return loc;  // p | q: factor is 1
        auto b = sym_power_local_factor(m, eigen.satake(p), j_max);
        for (int j = 0; j <= j_max; ++j) loc[static_cast<std::size_t>(j)] = b[static_cast<std::size_t>(j)];
        if (chi != nullptr) {
            cplx chi_p = chi->value(p), w = 1.0;
            for (int j = 1; j <= j_max; ++j) {
                w *= chi_p;
                loc[static_cast<std::size_t>(j)] *= w;
            }
        }
        return loc;
    };
    std::string label = "sym" + std::to_string(m);
    if (chi != nullptr)
        label += "[q=" + std::to_string(chi->modulus()) + "#" + std::to_string(chi->index()) + "]";
    return build_from_euler(local, n_max, table, label);
}

FormalDirichletSeries build_F(const EigenSystem& eigen, const DirichletCharacter* chi,
                              std::int64_t n_max) {
    if (eigen.n_max() < n_max)
        throw std::invalid_argument("build_F: eigen table shorter than n_max");
    auto out = FormalDirichletSeries::zero(n_max, "F");
    for (std::int64_t n = 1; n <= n_max; ++n) {
        double l = eigen.lambda(n);
        double l4 = (l * l) * (l * l);
        out.a[static_cast<std::size_t>(n)] = (chi != nullptr) ? l4 * chi->value(n) : cplx(l4);
    }
    if (chi != nullptr)
        out.label += "[q=" + std::to_string(chi->modulus()) + "#" + std::to_string(chi->index()) + "]";
    return out;
}

CorrectionSeries extract_U(const EigenSystem& eigen, const DirichletCharacter* chi,
                           std::int64_t n_max, const FactorTable& table) {
    auto l_series = (chi != nullptr) ? build_l_series(*chi, n_max)
                                     : FormalDirichletSeries::ones(n_max, "zeta");
    auto sym2 = build_sym_series(eigen, 2, chi, n_max, table);
    auto sym4 = build_sym_series(eigen, 4, chi, n_max, table);
    auto rem = build_F(eigen, chi, n_max);
    rem = dirichlet_divide(rem, l_series);
    rem = dirichlet_divide(rem, l_series);
    rem = dirichlet_divide(rem, sym2);
    rem = dirichlet_divide(rem, sym2);
    rem = dirichlet_divide(rem, sym2);
    rem = dirichlet_divide(rem, sym4);

    CorrectionSeries u;
    u.n_max = n_max;
    u.u = std::move(rem.a);
    u.chi_label = (chi != nullptr)
                      ? "chi[q=" + std::to_string(chi->modulus()) + "#" +
                            std::to_string(chi->index()) + "]"
                      : "trivial";
    return u;
}

ConvergenceReport convergence_diagnostic(const CorrectionSeries& u, double sigma,
                                         std::span<const std::int64_t> windows) {
    if (!(sigma > 0.5 && sigma <= 1.0))
        throw std::invalid_argument("convergence_diagnostic: sigma must lie in (0.5, 1.0]");
    ConvergenceReport rep;
    rep.sigma = sigma;
    CompensatedSum sum;
    std::int64_t n = 1;
    for (std::int64_t w : windows) {
        if (w > u.n_max)
            throw std::invalid_argument("convergence_diagnostic: window beyond series range");
        for (; n <= w; ++n)
            sum.add(std::abs(u.u[static_cast<std::size_t>(n)]) *
                    std::pow(static_cast<double>(n), -sigma));
        rep.window_ends.push_back(w);
        rep.partial_sums.push_back(sum.value());
    }
    for (std::size_t i = 0; i + 1 < rep.partial_sums.size(); ++i)
        rep.increments.push_back(rep.partial_sums[i + 1] - rep.partial_sums[i]);
    for (std::size_t i = 0; i + 1 < rep.increments.size(); ++i)
        if (rep.increments[i + 1] > rep.increments[i]) rep.non_cauchy = true;
    return rep;
}

LValueResult l_value_at_one(SymPowerKind kind, std::int64_t q, std::int64_t prime_cutoff,
                            const EigenSystem& eigen, const FactorTable& table) {
    if (prime_cutoff < 100)
        throw std::invalid_argument("l_value_at_one: prime cutoff must be >= 100");
    if (table.n_max() < prime_cutoff || eigen.n_max() < prime_cutoff)
        throw std::invalid_argument("l_value_at_one: tables shorter than the prime cutoff");
    const int m = static_cast<int>(kind);
    double value = 1.0;
    double value_half = 1.0;
    const std::int64_t half = prime_cutoff / 2;
    for (std::int64_t p : table.primes()) {
        if (p > prime_cutoff) break;
        if (q % p == 0) continue;
        double theta = eigen.satake(p).theta;
        double x = 1.0 / static_cast<double>(p);
        // Real form of the degree-(m+1) local denominator: the conjugate
        // Satake pairs give quadratics 1 - 2cos(2j theta) X + X^2.
        double denom = 1.0 - x;
        denom *= 1.0 - 2.0 * std::cos(2.0 * theta) * x + x * x;
        if (m == 4) denom *= 1.0 - 2.0 * std::cos(4.0 * theta) * x + x * x;
        value /= denom;
        if (p <= half) value_half = value;
    }
    LValueResult res;
    res.value = value;
    res.bracket = std::fabs(value - value_half);
    res.cutoff = prime_cutoff;
    return res;
}

FactorizationCheck check_factorization(const EigenSystem& eigen, const DirichletCharacter* chi,
                                       std::int64_t n_max, const FactorTable& table) {
    auto l_series = (chi != nullptr) ? build_l_series(*chi, n_max)
                                     : FormalDirichletSeries::ones(n_max, "zeta");
    auto sym2 = build_sym_series(eigen, 2, chi, n_max, table);
    auto sym4 = build_sym_series(eigen, 4, chi, n_max, table);
    auto f = build_F(eigen, chi, n_max);
    auto u = extract_U(eigen, chi, n_max, table);

    FormalDirichletSeries recon = l_series;
    recon = dirichlet_convolve(recon, l_series);
    recon = dirichlet_convolve(recon, sym2);
    recon = dirichlet_convolve(recon, sym2);
    recon = dirichlet_convolve(recon, sym2);
    recon = dirichlet_convolve(recon, sym4);
    FormalDirichletSeries u_series;
    u_series.n_max = n_max;
    u_series.a = u.u;
    recon = dirichlet_convolve(recon, u_series);

    FactorizationCheck check;
    check.u1_error = std::abs(u.u[1] - 1.0);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        double scale = std::max(1.0, std::abs(f.a[static_cast<std::size_t>(n)]));
        double res = std::abs(recon.a[static_cast<std::size_t>(n)] -
                              f.a[static_cast<std::size_t>(n)]) /
                     scale;
        check.max_residual = std::max(check.max_residual, res);
    }
    for (std::int64_t n = 2; n <= n_max; ++n) {
        double mag = std::abs(u.u[static_cast<std::size_t>(n)]);
        if (table.is_prime(n)) {
            check.max_u_at_primes = std::max(check.max_u_at_primes, mag);
        } else {
            bool squarefull = true;
            for (const auto& [p, e] : table.factorize(n))
                if (e < 2) squarefull = false;
            if (!squarefull) check.max_u_off_support = std::max(check.max_u_off_support, mag);
        }
    }
    return check;
}

}  // namespace heckelab
