#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <etakit/qseries.hpp>

namespace testsupport {

using etakit::BigInt;
using etakit::FSeries;
using etakit::PrimeField;
using etakit::ZSeries;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Dense random series over F_l with no residue restriction.
inline FSeries random_fseries(std::mt19937_64& g, const PrimeField& F, std::int64_t prec,
                              double density = 0.6) {
    std::uniform_int_distribution<std::uint64_t> c(0, F.ell() - 1);
    std::bernoulli_distribution keep(density);
    std::vector<std::uint64_t> v(static_cast<std::size_t>(prec), 0);
    for (auto& x : v)
        if (keep(g)) x = c(g);
    return FSeries::from_coeffs(F, std::move(v));
}

inline ZSeries random_zseries(std::mt19937_64& g, std::int64_t prec, std::int64_t bound = 1000) {
    std::uniform_int_distribution<std::int64_t> c(-bound, bound);
    std::vector<BigInt> v(static_cast<std::size_t>(prec));
    for (auto& x : v) x = c(g);
    return ZSeries::from_coeffs(etakit::Integers{}, std::move(v));
}

/// Integer coefficients of prod_{n>=1} (1 - q^n)^e up to q^(N-1), by repeated multiplication.
inline std::vector<BigInt> euler_product(std::int64_t N, int e) {
    std::vector<BigInt> c(static_cast<std::size_t>(N), 0);
    c[0] = 1;
    for (int rep = 0; rep < e; ++rep)
        for (std::int64_t n = 1; n < N; ++n)
            for (std::int64_t i = N - 1; i >= n; --i) c[i] -= c[i - n];
    return c;
}

/// Legendre symbol by enumerating squares mod an odd prime p.
inline int legendre_bruteforce(std::int64_t a, std::int64_t p) {
    const auto r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (std::int64_t x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

// Jacobi symbol (a/d), d odd positive, from Legendre symbols of the prime factors.
inline int jacobi_oracle(std::int64_t a, std::int64_t d) {
    int s = 1;
    for (std::int64_t p = 3; d > 1; p += 2) {
        while (d % p == 0) {
            s *= legendre_bruteforce(a, p);
            d /= p;
        }
    }
    return s;
}

inline std::uint64_t power_oracle(std::uint64_t b, std::int64_t e, std::uint64_t ell) {
    if (e < 0) {
        b = power_oracle(b, static_cast<std::int64_t>(ell) - 2, ell);
        e = -e;
    }
    std::uint64_t r = 1;
    for (std::int64_t i = 0; i < e; ++i) r = r * (b % ell) % ell;
    return r;
}

// Independent divisor sum for A_t(n): loops over all d <= n.
inline std::vector<std::uint64_t> shimura_oracle(const FSeries& f, std::int64_t t, std::int64_t lambda,
                                          std::int64_t n_max) {
    const std::uint64_t ell = f.ring().ell();
    std::vector<std::uint64_t> out;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        std::int64_t s = 0;
        for (std::int64_t d = 1; d <= n; ++d) {
            if (n % d != 0 || d % 2 == 0 || d % 3 == 0) continue;
            int sym = jacobi_oracle(12 * t, d);
            if (lambda % 2 == 1) sym *= (d % 4 == 1) ? 1 : -1;
            const auto a = f[t * (n / d) * (n / d)];
            if (sym == 0 || a == 0) continue;
            const auto term = static_cast<std::int64_t>(power_oracle(d, lambda - 1, ell) * a % ell);
            s += sym * term;
        }
        out.push_back(static_cast<std::uint64_t>(((s % static_cast<std::int64_t>(ell)) + ell) % ell));
    }
    return out;
}

}  // namespace testsupport
