#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace heckelab {

using int128 = __int128;
using uint128 = unsigned __int128;

inline int128 abs128(int128 x) { return x < 0 ? -x : x; }

inline std::string to_string(int128 x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    uint128 u = neg ? static_cast<uint128>(-(x + 1)) + 1 : static_cast<uint128>(x);
    char buf[48];
    int pos = 48;
    while (u > 0) {
        buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
        u /= 10;
    }
    std::string s;
    if (neg) s.push_back('-');
    s.append(buf + pos, 48 - pos);
    return s;
}

inline int128 parse_int128(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("parse_int128: empty string");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = (s[0] == '-');
        i = 1;
        if (s.size() == 1) throw std::invalid_argument("parse_int128: sign only");
    }
    uint128 u = 0;
    const uint128 limit = neg ? (static_cast<uint128>(1) << 127)
                              : (static_cast<uint128>(1) << 127) - 1;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c < '0' || c > '9')
            throw std::invalid_argument("parse_int128: bad digit in '" + s + "'");
        uint128 next = u * 10 + static_cast<uint128>(c - '0');
        if (next / 10 != u || next > limit)
            throw std::overflow_error("parse_int128: value out of int128 range");
        u = next;
    }
    if (neg) return -static_cast<int128>(u - 1) - 1;
    return static_cast<int128>(u);
}

inline double to_double(int128 x) {
    return static_cast<double>(x);
}

}  // namespace heckelab
