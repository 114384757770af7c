#include "heckelab/characters.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "heckelab/numeric.hpp"
#include "heckelab/parallel.hpp"

namespace heckelab {

namespace detail {

// One cyclic component of (Z/q)*: dlog values on the residues mod pe.
struct CyclicComponent {
    std::int64_t pe;                 // prime power modulus of the component
    std::int64_t order;              // size of the cyclic factor
    std::vector<std::int32_t> dlog;  // index by n mod pe; -1 off units
};

struct UnitGroupCore {
    std::int64_t q = 1;
    std::int64_t phi = 1;
    std::int64_t exponent = 1;  // lcm of component orders
    std::vector<CyclicComponent> components;
    std::vector<bool> is_unit;  // index by n mod q
};

}  // namespace detail

namespace {

using detail::CyclicComponent;
using detail::UnitGroupCore;

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
    std::int64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::int64_t primitive_root_mod_p(std::int64_t p) {
    if (p == 2) return 1;
    auto factors = prime_factors(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::int64_t r : factors) {
            if (pow_mod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw std::logic_error("primitive_root_mod_p: none found for p=" + std::to_string(p));
}

// Component for an odd prime power: single cyclic factor of order phi(p^a).
CyclicComponent odd_component(std::int64_t p, int a) {
    std::int64_t pe = 1;
    for (int i = 0; i < a; ++i) pe *= p;
    std::int64_t phi = pe / p * (p - 1);
    std::int64_t g = primitive_root_mod_p(p);
    if (a > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;  // lift to p^a
    CyclicComponent comp{pe, phi, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
    std::int64_t cur = 1;
    for (std::int64_t j = 0; j < phi; ++j) {
        comp.dlog[static_cast<std::size_t>(cur)] = static_cast<std::int32_t>(j);
        cur = cur * g % pe;
    }
    return comp;
}

// Components for 2^a, a >= 3: sign part {+-1} and the cyclic part <5>.
std::pair<CyclicComponent, CyclicComponent> two_power_components(int a) {
    std::int64_t pe = std::int64_t{1} << a;
    std::int64_t half = pe >> 2;  // order of <5> is 2^{a-2}
    CyclicComponent sign{pe, 2, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
    CyclicComponent five{pe, half, std::vector<std::int32_t>(static_cast<std::size_t>(pe), -1)};
    std::int64_t cur = 1;
    for (std::int64_t j = 0; j < half; ++j) {
        sign.dlog[static_cast<std::size_t>(cur)] = 0;
        five.dlog[static_cast<std::size_t>(cur)] = static_cast<std::int32_t>(j);
        std::int64_t neg = pe - cur;
        sign.dlog[static_cast<std::size_t>(neg)] = 1;
        five.dlog[static_cast<std::size_t>(neg)] = static_cast<std::int32_t>(j);
        cur = cur * 5 % pe;
    }
    return {sign, five};
}

std::shared_ptr<const UnitGroupCore> build_core(std::int64_t q) {
    if (q < 1) throw std::invalid_argument("CharacterGroup: q must be >= 1");
    auto core = std::make_shared<UnitGroupCore>();
    core->q = q;
    core->is_unit.assign(static_cast<std::size_t>(q), false);
    if (q == 1) {
        core->is_unit[0] = true;  // every n is 0 mod 1 and coprime to 1
        return core;
    }
    for (std::int64_t n = 0; n < q; ++n)
        core->is_unit[static_cast<std::size_t>(n)] = std::gcd(n, q) == 1;

    std::int64_t rest = q;
    int a2 = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++a2;
    }
    if (a2 == 2) {
        CyclicComponent comp{4, 2, {-1, 0, -1, 1}};
        core->components.push_back(std::move(comp));
    } else if (a2 >= 3) {
        auto [sign, five] = two_power_components(a2);
        core->components.push_back(std::move(sign));
        core->components.push_back(std::move(five));
    }
    for (std::int64_t p = 3; p * p <= rest; p += 2) {
        if (rest % p == 0) {
            int a = 0;
            while (rest % p == 0) {
                rest /= p;
                ++a;
            }
            core->components.push_back(odd_component(p, a));
        }
    }
    if (rest > 1) core->components.push_back(odd_component(rest, 1));

    core->phi = 1;
    core->exponent = 1;
    for (const auto& c : core->components) {
        core->phi *= c.order;
        core->exponent = std::lcm(core->exponent, c.order);
    }
    return core;
}

// Smallest divisor m of q such that chi is trivial on the kernel of
// (Z/q)* -> (Z/m)*, i.e. chi(n) = 1 whenever n = 1 mod m and gcd(n,q) = 1.
std::int64_t conductor_of(std::int64_t q, const std::vector<std::int32_t>& expo) {
    for (std::int64_t m = 1; m <= q; ++m) {
        if (q % m != 0) continue;
        bool trivial = true;
        for (std::int64_t n = 1 % q; n < q; n += m) {
            if (expo[static_cast<std::size_t>(n)] > 0) {
                trivial = false;
                break;
            }
        }
        if (trivial) return m;
    }
    return q;
}

}  // namespace

CharacterGroup::CharacterGroup(std::int64_t q) : q_(q), core_(build_core(q)) {
    phi_ = core_->phi;
    exponent_ = core_->exponent;
}

DirichletCharacter CharacterGroup::character(std::size_t index) const {
    if (index >= size())
        throw std::out_of_range("CharacterGroup::character: index " + std::to_string(index) +
                                " >= phi(q) = " + std::to_string(phi_));
    // Tuple odometer: index -> (t_1, ..., t_r) with the first component
    // fastest. Index 0 is the all-zero tuple, the principal character.
    std::vector<std::int64_t> tuple(core_->components.size(), 0);
    std::size_t rem = index;
    for (std::size_t i = 0; i < core_->components.size(); ++i) {
        auto ord = static_cast<std::size_t>(core_->components[i].order);
        tuple[i] = static_cast<std::int64_t>(rem % ord);
        rem /= ord;
    }

    DirichletCharacter chi;
    chi.q_ = q_;
    chi.index_ = index;
    chi.denom_ = exponent_;
    chi.expo_.assign(static_cast<std::size_t>(q_), -1);
    for (std::int64_t n = 0; n < q_; ++n) {
        if (!core_->is_unit[static_cast<std::size_t>(n)]) continue;
        std::int64_t k = 0;
        for (std::size_t i = 0; i < core_->components.size(); ++i) {
            const auto& c = core_->components[i];
            std::int64_t e = c.dlog[static_cast<std::size_t>(n % c.pe)];
            k = (k + tuple[i] * e % exponent_ * (exponent_ / c.order)) % exponent_;
        }
        chi.expo_[static_cast<std::size_t>(n)] = static_cast<std::int32_t>(k);
    }

    std::int64_t g = exponent_;
    for (std::int64_t n = 0; n < q_; ++n) {
        auto k = chi.expo_[static_cast<std::size_t>(n)];
        if (k > 0) g = std::gcd(g, static_cast<std::int64_t>(k));
    }
    chi.order_ = exponent_ / g;
    chi.conductor_ = conductor_of(q_, chi.expo_);

    chi.values_.assign(static_cast<std::size_t>(q_), 0.0);
    for (std::int64_t n = 0; n < q_; ++n) {
        auto k = chi.expo_[static_cast<std::size_t>(n)];
        if (k < 0) continue;
        // Quarter turns are snapped so real characters take exact +-1.
        if (4 * static_cast<std::int64_t>(k) % exponent_ == 0) {
            switch (4 * k / exponent_ % 4) {
                case 0: chi.values_[static_cast<std::size_t>(n)] = {1.0, 0.0}; break;
                case 1: chi.values_[static_cast<std::size_t>(n)] = {0.0, 1.0}; break;
                case 2: chi.values_[static_cast<std::size_t>(n)] = {-1.0, 0.0}; break;
                default: chi.values_[static_cast<std::size_t>(n)] = {0.0, -1.0}; break;
            }
        } else {
            chi.values_[static_cast<std::size_t>(n)] =
                std::polar(1.0, 2.0 * std::numbers::pi * k / static_cast<double>(exponent_));
        }
    }
    return chi;
}

const std::vector<DirichletCharacter>& CharacterGroup::characters() const {
    if (!all_) {
        auto all = std::make_shared<std::vector<DirichletCharacter>>();
        all->reserve(size());
        for (std::size_t i = 0; i < size(); ++i) all->push_back(character(i));
        all_ = std::move(all);
    }
    return *all_;
}

std::int64_t DirichletCharacter::expo(std::int64_t n) const {
    std::int64_t r = n % q_;
    if (r < 0) r += q_;
    return expo_[static_cast<std::size_t>(r)];
}

std::complex<double> DirichletCharacter::value(std::int64_t n) const {
    std::int64_t r = n % q_;
    if (r < 0) r += q_;
    return values_[static_cast<std::size_t>(r)];
}

std::pair<DirichletCharacter, DirichletCharacter> CharacterGroup::factor_through(
    const DirichletCharacter& chi) const {
    if (chi.modulus() != q_)
        throw std::invalid_argument("factor_through: character has a different modulus");
    std::int64_t q1 = chi.conductor();
    DirichletCharacter principal = character(principal_index());

    CharacterGroup sub(q1);
    // chi_star(b) = chi(n) for any n = b mod q1 with gcd(n, q) = 1; such n
    // exists for every unit b mod q1. Match it against the characters mod q1.
    std::vector<std::int64_t> star_expo(static_cast<std::size_t>(q1), -1);
    std::vector<std::int64_t> denom_scale;  // star value exponent on denom_ scale
    for (std::int64_t b = 0; b < q1; ++b) {
        if (q1 > 1 && std::gcd(b, q1) != 1) continue;
        std::int64_t n = b;
        while (std::gcd(n == 0 ? q_ : n, q_) != 1) n += q1;
        star_expo[static_cast<std::size_t>(b)] = chi.expo(n);
    }
    for (std::size_t i = 0; i < sub.size(); ++i) {
        DirichletCharacter cand = sub.character(i);
        bool match = true;
        for (std::int64_t b = 0; b < q1 && match; ++b) {
            auto want = star_expo[static_cast<std::size_t>(b)];
            if (want < 0) continue;
            // Compare e^{2 pi i want/denom} with e^{2 pi i k/cand.denom} exactly.
            auto k = cand.expo(b);
            if (k < 0 || want * cand.denom() != k * chi.denom()) match = false;
        }
        if (match) return {principal, cand};
    }
    throw std::logic_error("factor_through: no inducing character found (broken group)");
}

std::complex<double> CharacterGroup::orthogonality_project(
    std::span<const std::complex<double>> v, std::int64_t a, int threads) const {
    std::int64_t a_red = a % q_;
    if (a_red < 0) a_red += q_;
    if (q_ > 1 && std::gcd(a_red, q_) != 1)
        throw std::invalid_argument("orthogonality_project: residue " + std::to_string(a) +
                                    " is not coprime to q=" + std::to_string(q_));
    const auto X = static_cast<std::int64_t>(v.size()) - 1;
    const auto& chars = characters();

    std::vector<std::complex<double>> per_char(chars.size());
    parallel_blocks(0, static_cast<std::int64_t>(chars.size()), 1, threads,
                    [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
                        for (std::int64_t c = lo; c < hi; ++c) {
                            const auto& chi = chars[static_cast<std::size_t>(c)];
                            CompensatedSum re, im;
                            for (std::int64_t n = 1; n <= X; ++n) {
                                auto t = v[static_cast<std::size_t>(n)] * chi.value(n);
                                re.add(t.real());
                                im.add(t.imag());
                            }
                            per_char[static_cast<std::size_t>(c)] = {re.value(), im.value()};
                        }
                    });

    CompensatedSum re, im;
    for (std::size_t c = 0; c < chars.size(); ++c) {
        auto t = std::conj(chars[c].value(a_red)) * per_char[c];
        re.add(t.real());
        im.add(t.imag());
    }
    double inv_phi = 1.0 / static_cast<double>(phi_);
    return {re.value() * inv_phi, im.value() * inv_phi};
}

}  // namespace heckelab
