#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace heckelab {

// Neumaier variant of compensated summation. Exact enough for 10^7-term
// sums of fourth powers spanning ~12 orders of magnitude.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    void add(const CompensatedSum& other) {
        add(other.sum);
        comp += other.comp;
    }
    double value() const { return sum + comp; }
};

inline std::int64_t isqrt64(std::int64_t n) {
    if (n < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Floats are printed with 15 significant digits and a lowercase exponent so
// that identical runs produce identical bytes.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.14e", v);
    return std::string(buf);
}

// Log-spaced integer grid in [lo, hi], deduplicated, endpoints included.
inline std::vector<std::int64_t> log_grid(std::int64_t lo, std::int64_t hi, int points) {
    std::vector<std::int64_t> grid;
    if (points < 2 || hi <= lo) {
        grid.push_back(lo);
        if (hi > lo) grid.push_back(hi);
        return grid;
    }
    double llo = std::log(static_cast<double>(lo));
    double lhi = std::log(static_cast<double>(hi));
    for (int i = 0; i < points; ++i) {
        double t = llo + (lhi - llo) * i / (points - 1);
        auto x = static_cast<std::int64_t>(std::llround(std::exp(t)));
        if (x < lo) x = lo;
        if (x > hi) x = hi;
        if (grid.empty() || grid.back() != x) grid.push_back(x);
    }
    return grid;
}

}  // namespace heckelab
