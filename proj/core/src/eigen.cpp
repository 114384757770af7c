#include "heckelab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "heckelab/parallel.hpp"

namespace heckelab {

namespace {

struct SparseTerm {
    std::int64_t degree;
    std::int64_t coeff;
};

// Terms of prod (1-q^m)^3 = sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2} up to
// the given degree.
std::vector<SparseTerm> eta_cube_terms(std::int64_t max_degree) {
    std::vector<SparseTerm> terms;
    for (std::int64_t m = 0;; ++m) {
        std::int64_t deg = m * (m + 1) / 2;
        if (deg > max_degree) break;
        terms.push_back({deg, (m % 2 == 0) ? 2 * m + 1 : -(2 * m + 1)});
    }
    return terms;
}

// Guards one dense*sparse pass: the next pass cannot overflow int128 if
// max|acc| * sum|coeff| stays below 2^126 (one spare bit for the signed
// accumulation). Magnitudes are compared through base-2 logarithms.
void check_no_overflow(const std::vector<int128>& acc, const std::vector<SparseTerm>& terms,
                       int pass) {
    int128 max_abs = 0;
    for (int128 v : acc) {
        int128 a = abs128(v);
        if (a > max_abs) max_abs = a;
    }
    long double sum_coeff = 0.0L;
    for (const auto& t : terms) sum_coeff += static_cast<long double>(std::llabs(t.coeff));
    long double bits = std::log2l(static_cast<long double>(max_abs) + 1.0L) +
                       std::log2l(sum_coeff + 1.0L);
    if (bits >= 126.0L)
        throw std::overflow_error(
            "compute_tau_series: pass " + std::to_string(pass) +
            " could exceed the signed 128-bit range (needs ~" +
            std::to_string(static_cast<long long>(bits) + 1) +
            " bits); reduce the range");
}

}  // namespace

std::vector<int128> compute_tau_series(std::int64_t n_max, int threads) {
    if (n_max < 1) throw std::invalid_argument("compute_tau_series: n_max must be >= 1");
    // tau(n) is the coefficient of q^{n-1} in (prod (1-q^m)^3)^8.
    const std::int64_t deg = n_max - 1;
    auto terms = eta_cube_terms(deg);

    // P^2 straight from the sparse terms.
    std::vector<int128> acc(static_cast<std::size_t>(deg) + 1, 0);
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (std::size_t j = 0; j < terms.size(); ++j) {
            std::int64_t d = terms[i].degree + terms[j].degree;
            if (d > deg) break;
            acc[static_cast<std::size_t>(d)] +=
                static_cast<int128>(terms[i].coeff) * terms[j].coeff;
        }
    }

    // Six more sparse multiplications take P^2 to P^8. Blocks of the
    // output range are independent; integer addition is exact, so the
    // result does not depend on the thread count.
    std::vector<int128> next(static_cast<std::size_t>(deg) + 1);
    for (int pass = 3; pass <= 8; ++pass) {
        check_no_overflow(acc, terms, pass);
        parallel_blocks(0, deg + 1, 1 << 15, threads,
                        [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
                            for (std::int64_t n = lo; n < hi; ++n) {
                                int128 c = 0;
                                for (const auto& t : terms) {
                                    if (t.degree > n) break;
                                    c += static_cast<int128>(t.coeff) *
                                         acc[static_cast<std::size_t>(n - t.degree)];
                                }
                                next[static_cast<std::size_t>(n)] = c;
                            }
                        });
        acc.swap(next);
    }

    std::vector<int128> tau(static_cast<std::size_t>(n_max) + 1, 0);
    for (std::int64_t n = 1; n <= n_max; ++n)
        tau[static_cast<std::size_t>(n)] = acc[static_cast<std::size_t>(n - 1)];
    if (tau[1] != 1) throw std::logic_error("compute_tau_series: tau(1) != 1");
    return tau;
}

std::vector<double> normalize_tau(std::span<const int128> tau, int weight) {
    if (tau.size() < 2) throw std::invalid_argument("normalize_tau: empty tau table");
    const double exponent = (weight - 1) / 2.0;
    std::vector<double> lambda(tau.size(), 0.0);
    for (std::size_t n = 1; n < tau.size(); ++n)
        lambda[n] = to_double(tau[n]) / std::pow(static_cast<double>(n), exponent);
    return lambda;
}

std::vector<double> hecke_extend(const std::function<double(std::int64_t)>& seed,
                                 std::int64_t n_max, const FactorTable& table) {
    if (table.n_max() < n_max)
        throw std::invalid_argument("hecke_extend: factor table shorter than n_max");
    std::vector<double> lambda(static_cast<std::size_t>(n_max) + 1, 0.0);
    lambda[1] = 1.0;

    // Prime powers first: lambda(p^{j+1}) = lambda(p) lambda(p^j) - lambda(p^{j-1}).
    for (std::int64_t p : table.primes()) {
        if (p > n_max) break;
        double lp = seed(p);
        if (std::isnan(lp))
            throw std::invalid_argument("hecke_extend: seed missing prime " + std::to_string(p));
        if (std::fabs(lp) > 2.0)
            throw std::invalid_argument("hecke_extend: |seed(" + std::to_string(p) +
                                        ")| = " + std::to_string(std::fabs(lp)) +
                                        " > 2 violates the unit Satake constraint");
        double prev = 1.0, cur = lp;
        std::int64_t pk = p;
        while (pk <= n_max) {
            lambda[static_cast<std::size_t>(pk)] = cur;
            if (pk > n_max / p) break;
            pk *= p;
            double nxt = lp * cur - prev;
            prev = cur;
            cur = nxt;
        }
    }

    // General n by multiplicativity over the coprime prime-power split.
    for (std::int64_t n = 2; n <= n_max; ++n) {
        std::int64_t p = table.spf(n);
        std::int64_t pe = p, m = n / p;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        if (m > 1)
            lambda[static_cast<std::size_t>(n)] =
                lambda[static_cast<std::size_t>(pe)] * lambda[static_cast<std::size_t>(m)];
    }
    return lambda;
}

std::vector<double> hecke_extend(const std::map<std::int64_t, double>& seed,
                                 std::int64_t n_max, const FactorTable& table) {
    return hecke_extend(
        [&seed](std::int64_t p) {
            auto it = seed.find(p);
            return it == seed.end() ? std::nan("") : it->second;
        },
        n_max, table);
}

double SatakeAngle::lambda_p() const { return 2.0 * std::cos(theta); }

std::vector<double> sym_power_local_factor(int m, const SatakeAngle& angle, int j_max) {
    if (m != 2 && m != 4)
        throw std::invalid_argument("sym_power_local_factor: m must be 2 or 4");
    if (j_max < 0) throw std::invalid_argument("sym_power_local_factor: j_max must be >= 0");

    using cplx = std::complex<double>;
    const cplx alpha = std::polar(1.0, angle.theta);

    // Expand the degree-(m+1) denominator prod (1 - alpha^{m-2i} X).
    std::vector<cplx> denom{1.0};
    for (int i = 0; i <= m; ++i) {
        cplx root = std::pow(alpha, m - 2 * i);
        std::vector<cplx> nxt(denom.size() + 1, 0.0);
        for (std::size_t k = 0; k < denom.size(); ++k) {
            nxt[k] += denom[k];
            nxt[k + 1] -= denom[k] * root;
        }
        denom.swap(nxt);
    }

    // Power-series inverse: b(0) = 1, b(j) = -sum_{i>=1} denom_i b(j-i).
    std::vector<cplx> b(static_cast<std::size_t>(j_max) + 1, 0.0);
    b[0] = 1.0;
    for (int j = 1; j <= j_max; ++j) {
        cplx s = 0.0;
        for (int i = 1; i <= std::min<int>(j, m + 1); ++i)
            s += denom[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j - i)];
        b[static_cast<std::size_t>(j)] = -s;
    }

    std::vector<double> out(b.size());
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (std::fabs(b[j].imag()) >= 1e-12)
            throw std::logic_error("sym_power_local_factor: residual imaginary part " +
                                   std::to_string(b[j].imag()) + " at j=" + std::to_string(j));
        out[j] = b[j].real();
    }
    return out;
}

EigenSystem EigenSystem::delta(std::int64_t n_max, int threads) {
    return delta_from_tau(compute_tau_series(n_max, threads));
}

EigenSystem EigenSystem::delta_from_tau(std::vector<int128> tau) {
    EigenSystem sys;
    sys.weight_ = 12;
    sys.n_max_ = static_cast<std::int64_t>(tau.size()) - 1;
    sys.source_ = EigenSource::delta_series;
    sys.lambda_ = normalize_tau(tau, 12);
    sys.tau_ = std::move(tau);
    return sys;
}

EigenSystem EigenSystem::from_prime_seed(const std::function<double(std::int64_t)>& seed,
                                         std::int64_t n_max, int weight,
                                         const FactorTable& table) {
    if (weight < 2 || weight % 2 != 0)
        throw std::invalid_argument("EigenSystem: weight must be an even integer >= 2");
    EigenSystem sys;
    sys.weight_ = weight;
    sys.n_max_ = n_max;
    sys.source_ = EigenSource::user_prime_seed;
    sys.lambda_ = hecke_extend(seed, n_max, table);
    return sys;
}

int128 EigenSystem::tau(std::int64_t n) const {
    if (tau_.empty()) throw std::logic_error("EigenSystem: no exact tau table for this source");
    if (n < 1 || n > n_max_) throw std::out_of_range("EigenSystem::tau: n out of range");
    return tau_[static_cast<std::size_t>(n)];
}

double EigenSystem::lambda(std::int64_t n) const {
    if (n < 1 || n > n_max_)
        throw std::out_of_range("EigenSystem::lambda: n=" + std::to_string(n) +
                                " outside [1, " + std::to_string(n_max_) + "]");
    return lambda_[static_cast<std::size_t>(n)];
}

std::vector<double> EigenSystem::lambda4_table() const {
    std::vector<double> v(lambda_.size(), 0.0);
    for (std::size_t n = 1; n < lambda_.size(); ++n) {
        double l2 = lambda_[n] * lambda_[n];
        v[n] = l2 * l2;
    }
    return v;
}

SatakeAngle EigenSystem::satake(std::int64_t p) const {
    double half = lambda(p) / 2.0;
    // Clamp guards eigenvalues at +-2 against rounding past the branch cut.
    half = std::clamp(half, -1.0, 1.0);
    return SatakeAngle{p, std::acos(half)};
}

void save_tau_cache(const std::string& path, std::span<const int128> tau) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_tau_cache: cannot open " + path);
    out << "n,tau\n";
    for (std::size_t n = 1; n < tau.size(); ++n)
        out << n << ',' << to_string(tau[n]) << '\n';
    if (!out) throw std::runtime_error("save_tau_cache: write failed for " + path);
}

namespace {

// sigma_11(n) mod 691 over 1..n_max via a smallest-prime-factor pass.
std::vector<std::int32_t> sigma11_mod691(std::int64_t n_max) {
    const std::int64_t q = 691;
    auto pow_mod = [&](std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        b %= q;
        while (e > 0) {
            if (e & 1) r = r * b % q;
            b = b * b % q;
            e >>= 1;
        }
        return r;
    };
    FactorTable table(std::max<std::int64_t>(n_max, 2));
    std::vector<std::int32_t> s(static_cast<std::size_t>(n_max) + 1, 0);
    s[1] = 1;
    for (std::int64_t n = 2; n <= n_max; ++n) {
        std::int64_t p = table.spf(n), pe = p, m = n / p;
        while (m % p == 0) {
            m /= p;
            pe *= p;
        }
        // sigma_11(p^e) = 1 + p^11 + ... + p^{11e}
        std::int64_t val = 0, pk = 1, p11 = pow_mod(p, 11), t = pe;
        while (t > 0) {
            val = (val + pk) % q;
            pk = pk * p11 % q;
            t /= p;
        }
        s[static_cast<std::size_t>(n)] =
            static_cast<std::int32_t>(val * s[static_cast<std::size_t>(m)] % q);
    }
    return s;
}

}  // namespace

std::vector<int128> load_tau_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_tau_cache: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != "n,tau")
        throw std::runtime_error("load_tau_cache: missing 'n,tau' header in " + path);
    std::vector<int128> tau(1, 0);
    std::size_t expect = 1;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("load_tau_cache: malformed row '" + line + "'");
        auto n = static_cast<std::size_t>(std::stoll(line.substr(0, comma)));
        if (n != expect)
            throw std::runtime_error("load_tau_cache: expected n=" + std::to_string(expect) +
                                     ", found n=" + std::to_string(n));
        tau.push_back(parse_int128(line.substr(comma + 1)));
        ++expect;
    }
    if (tau.size() < 2) throw std::runtime_error("load_tau_cache: no rows in " + path);
    if (tau[1] != 1) throw std::runtime_error("load_tau_cache: tau(1) != 1, cache rejected");
    auto n_max = static_cast<std::int64_t>(tau.size()) - 1;
    auto s11 = sigma11_mod691(n_max);
    for (std::int64_t n = 1; n <= n_max; ++n) {
        auto r = static_cast<std::int64_t>(tau[static_cast<std::size_t>(n)] % 691);
        if (r < 0) r += 691;
        if (r != s11[static_cast<std::size_t>(n)])
            throw std::runtime_error("load_tau_cache: tau(" + std::to_string(n) +
                                     ") fails the mod-691 congruence, cache rejected");
    }
    return tau;
}

std::uint64_t tau_checksum(std::span<const int128> tau) {
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t n = 1; n < tau.size(); ++n) {
        for (char c : to_string(tau[n])) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        h ^= static_cast<unsigned char>(',');
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace heckelab
