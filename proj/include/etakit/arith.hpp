#pragma once

// Elementary integer arithmetic: Kronecker symbols, primality, squarefree
// parts, divisor sums and modular powers.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace etakit {

/// Least nonnegative residue of a modulo m (m > 0).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

constexpr bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Kronecker symbol (a/n) for arbitrary integers a, n.
///
/// Completely multiplicative in n, with (a/2) = 0 for even a and
/// (-1)^((a^2-1)/8) otherwise, (a/-1) = sign(a), and (a/0) = [|a| = 1].
constexpr int kronecker(std::int64_t a, std::int64_t n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -1;
    }
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (a % 2 == 0) return 0;
        const std::int64_t a8 = mod_floor(a, 8);
        if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
    }
    // n is now odd and positive: Jacobi symbol.
    a = mod_floor(a, n);
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t n8 = n % 8;
            if (n8 == 3 || n8 == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

/// Squarefree part t of n >= 1, i.e. n = t * m^2 with t squarefree.
inline std::int64_t squarefree_part(std::int64_t n) {
    if (n < 1) throw invalid_argument("squarefree_part: n must be positive");
    std::int64_t t = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e & 1) t *= p;
    }
    return t * n;
}

inline bool is_squarefree(std::int64_t n) { return n >= 1 && squarefree_part(n) == n; }

inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::int64_t sigma(std::int64_t n, int k) {
    std::int64_t s = 0;
    for (auto d : divisors(n)) {
        std::int64_t t = 1;
        for (int i = 0; i < k; ++i) t *= d;
        s += t;
    }
    return s;
}

/// b^e mod m for e >= 0.
constexpr std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

/// Inverse of a modulo the prime p; a must be a unit.
inline std::uint64_t inv_mod(std::int64_t a, std::uint64_t p) {
    const auto r = static_cast<std::uint64_t>(mod_floor(a, static_cast<std::int64_t>(p)));
    if (r == 0) throw invalid_argument("inv_mod: non-invertible element");
    return pow_mod(r, p - 2, p);
}

/// Inverse of a unit modulo 24 (m^2 = 1 mod 24 for gcd(m,24) = 1, so m is its own inverse).
constexpr int inv_mod24(std::int64_t m) { return static_cast<int>(mod_floor(m, 24)); }

}  // namespace etakit
