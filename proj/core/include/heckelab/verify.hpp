#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heckelab/exact_series.hpp"
#include "heckelab/int128.hpp"

namespace heckelab {

// One line of a verification suite: suite,check,status,max_residual.
struct CheckLine {
    std::string suite;
    std::string check;
    bool pass = false;
    double max_residual = 0.0;
};

inline const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "hecke", "characters", "factorization", "kfull", "lemma210", "lemma211", "split"};
    return names;
}

// Runs one named suite at range n_max (each suite clamps to what it
// needs). Throws std::invalid_argument for an unknown suite name.
std::vector<CheckLine> run_verify_suite(const std::string& suite, std::int64_t n_max,
                                        int threads = 0);

// First n in [1, n_max] violating |tau(n)| <= floor(n^{11/2}) d(n), or 0 if
// the bound holds everywhere. The floor goes through exact integer square
// roots: floor(n^{11/2}) = isqrt(n^11); since tau is integral, rounding the
// bound down cannot produce a spurious failure unless |tau(n)| sits within
// d(n) of the exact bound, which never happens in the checked range.
std::int64_t deligne_first_violation(std::span<const int128> tau, std::int64_t n_max);

}  // namespace heckelab
