#pragma once

#include <cstdint>

#include "crx/text_model.hpp"

namespace crx::kr {

// Karp-Rabin polynomial fingerprints over the Mersenne prime 2^61 - 1:
// H(s) = s_1 B^{|s|-1} + ... + s_{|s|} B^0, symbols shifted by one so 0 is
// never a digit. Equal strings always collide; distinct strings of length L
// collide with probability at most L / 2^61 over the choice of B.

inline constexpr std::uint64_t kModulus = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t s = a + b;
    return s >= kModulus ? s - kModulus : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kModulus - b; }

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    const std::uint64_t lo = static_cast<std::uint64_t>(p & kModulus);
    const std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
    return add(lo, hi);
}

inline std::uint64_t pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

/// Fixed base; outputs are reproducible run to run.
inline constexpr std::uint64_t kBase = 0x1c3f5a9e27b4d61ull % kModulus;

inline std::uint64_t digit(Symbol s) { return std::uint64_t{s} + 1; }

/// H(uv) from H(u), H(v) and B^{|v|}.
inline std::uint64_t concat(std::uint64_t hu, std::uint64_t hv, std::uint64_t pow_v) { return add(mul(hu, pow_v), hv); }

} // namespace crx::kr
