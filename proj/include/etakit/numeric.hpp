#pragma once

// Double-precision checks of the eta and theta transformation laws.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "arith.hpp"
#include "errors.hpp"

namespace etakit::numeric {

using cplx = std::complex<double>;

/// e(x) = exp(2 pi i x).
inline cplx e(double x) { return std::polar(1.0, 2 * std::numbers::pi * x); }

class UnimodularMatrix {
public:
    UnimodularMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
        : a_(a), b_(b), c_(c), d_(d) {
        if (a * d - b * c != 1) throw invalid_argument("matrix is not in SL2(Z)");
    }
    std::int64_t a() const { return a_; }
    std::int64_t b() const { return b_; }
    std::int64_t c() const { return c_; }
    std::int64_t d() const { return d_; }

    cplx act(cplx z) const {
        return (static_cast<double>(a_) * z + static_cast<double>(b_)) /
               (static_cast<double>(c_) * z + static_cast<double>(d_));
    }
    /// Principal square root of cz + d.
    cplx sqrt_factor(cplx z) const {
        return std::sqrt(static_cast<double>(c_) * z + static_cast<double>(d_));
    }
    UnimodularMatrix operator-() const { return {-a_, -b_, -c_, -d_}; }
    friend UnimodularMatrix operator*(const UnimodularMatrix& x, const UnimodularMatrix& y) {
        return {x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_, x.c_ * y.a_ + x.d_ * y.c_,
                x.c_ * y.b_ + x.d_ * y.d_};
    }
    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

private:
    std::int64_t a_, b_, c_, d_;
};

/// nu_eta(gamma) = e(exponent / 24).
struct EtaMultiplier {
    int exponent = 0;  // in [0, 24)
    cplx value() const { return e(exponent / 24.0); }
    friend bool operator==(const EtaMultiplier&, const EtaMultiplier&) = default;
};

/// Multiplier of eta for the principal branch of (cz + d)^(1/2).
///
/// c > 0 uses the classical two-branch formula (Jacobi symbol times a 24th
/// root of unity). c < 0 reduces to -gamma: for Im z > 0, cz + d lies in the
/// lower half plane, so sqrt(-(cz+d)) = i sqrt(cz+d) and nu(gamma) = i nu(-gamma).
/// c = 0 is the translation z -> z + b/d with d = +-1; for d = -1 the factor
/// sqrt(-1) = i is divided out.
inline EtaMultiplier eta_multiplier(const UnimodularMatrix& g) {
    const std::int64_t a = g.a(), b = g.b(), c = g.c(), d = g.d();
    auto m24 = [](std::int64_t x) { return mod_floor(x, 24); };
    if (c == 0) {
        if (d == 1) return {static_cast<int>(m24(b))};
        return {static_cast<int>(m24(-b - 6))};
    }
    if (c < 0) {
        auto neg = eta_multiplier(-g);
        return {static_cast<int>(m24(neg.exponent + 6))};
    }
    // Reduce each factor mod 24 before multiplying to stay in range.
    const std::int64_t bd = m24(m24(b) * m24(d));
    const std::int64_t c2m1 = m24(m24(c) * m24(c) - 1);
    std::int64_t x;
    int symbol;
    if (c % 2 != 0) {
        symbol = kronecker(d, c);
        x = m24((a + d) % 24 * m24(c)) - bd * c2m1 - 3 * m24(c);
    } else {
        symbol = kronecker(c, d);
        x = m24((a + d) % 24 * m24(c)) - bd * c2m1 + 3 * m24(d) - 3 - 3 * m24(m24(c) * m24(d));
    }
    if (symbol < 0) x += 12;
    return {static_cast<int>(m24(x))};
}

/// Theta multiplier (c/d) eps_d^(-1) on Gamma_0(4), returned as the power k
/// of i (value i^k). The symbol (c/d) uses the convention (c/d) = (c/|d|)
/// with an extra sign when c < 0 and d < 0, and (0/+-1) = 1.
inline int theta_multiplier(const UnimodularMatrix& g) {
    const std::int64_t c = g.c(), d = g.d();
    if (d % 2 == 0) throw invalid_argument("theta_multiplier: d must be odd");
    if (c % 4 != 0) throw invalid_argument("theta_multiplier: gamma must lie in Gamma_0(4)");
    int sym = c == 0 ? 1 : kronecker(c, d < 0 ? -d : d);
    if (c < 0 && d < 0) sym = -sym;
    const int eps_power = mod_floor(d, 4) == 1 ? 0 : 1;  // eps_d = i^eps_power
    int k = -eps_power;
    if (sym < 0) k += 2;
    return static_cast<int>(mod_floor(k, 4));
}

inline cplx i_power(int k) {
    static constexpr double re[] = {1, 0, -1, 0};
    static constexpr double im[] = {0, 1, 0, -1};
    const auto m = static_cast<int>(mod_floor(k, 4));
    return {re[m], im[m]};
}

/// Bound on the tail sum_{n > N} |q|^(n^2/24) for Im z = y.
inline double eta_tail_bound(double y, int terms) {
    const double qa = std::exp(-2 * std::numbers::pi * y / 24.0);
    const double n1 = terms + 1.0;
    const double ratio = std::pow(qa, 2 * n1 + 1);
    if (ratio >= 1) return INFINITY;
    return std::pow(qa, n1 * n1) / (1 - ratio);
}

/// eta(z) = sum_{n=1}^{terms} (12/n) e(n^2 z / 24).
inline cplx eta_value(cplx z, int terms) {
    cplx s = 0;
    for (int n = 1; n <= terms; ++n) {
        const int k = kronecker(12, n);
        if (k == 0) continue;
        const double n2 = static_cast<double>(n) * n / 24.0;
        s += static_cast<double>(k) * std::exp(cplx(0, 2 * std::numbers::pi) * (n2 * z));
    }
    return s;
}

/// Least pentagonal-sum length with tail below tol at height y.
inline int eta_terms_for(double y, double tol = 1e-15) {
    int n = 8;
    while (eta_tail_bound(y, n) > tol) n *= 2;
    return n;
}

/// theta(z) = sum_{n in Z} e(n^2 z), with terms chosen for tail < tol.
inline cplx theta_value(cplx z, double tol = 1e-15) {
    const double y = z.imag();
    const double qa = std::exp(-2 * std::numbers::pi * y);
    cplx s = 1;
    for (int n = 1;; ++n) {
        const double mag = std::pow(qa, static_cast<double>(n) * n);
        s += 2.0 * std::exp(cplx(0, 2 * std::numbers::pi) * (static_cast<double>(n) * n * z));
        if (mag < tol) break;
    }
    return s;
}

/// |eta(gamma z) - nu_eta(gamma) (cz+d)^(1/2) eta(z)| with series_prec
/// pentagonal terms on both sides.
inline double verify_eta_transform(const UnimodularMatrix& g, cplx z, int series_prec) {
    if (z.imag() <= 0) throw invalid_argument("verify_eta_transform: z must lie in the upper half plane");
    const cplx w = g.act(z);
    constexpr double budget = 1e-12;
    if (eta_tail_bound(w.imag(), series_prec) > budget || eta_tail_bound(z.imag(), series_prec) > budget)
        throw insufficient_precision("verify_eta_transform: Im(gamma z) too small",
                                     eta_terms_for(std::min(w.imag(), z.imag()), budget), series_prec);
    const cplx lhs = eta_value(w, series_prec);
    const cplx rhs = eta_multiplier(g).value() * g.sqrt_factor(z) * eta_value(z, series_prec);
    return std::abs(lhs - rhs);
}

/// |theta(gamma z) - nu_theta(gamma) (cz+d)^(1/2) theta(z)|.
inline double verify_theta_transform(const UnimodularMatrix& g, cplx z) {
    const cplx lhs = theta_value(g.act(z));
    const cplx rhs = i_power(theta_multiplier(g)) * g.sqrt_factor(z) * theta_value(z);
    return std::abs(lhs - rhs);
}

/// Branch sign sigma = sqrt(c1 (g2 z) + d1) sqrt(c2 z + d2) / sqrt(c3 z + d3)
/// for g3 = g1 g2; always +-1.
inline int cocycle_sign(const UnimodularMatrix& g1, const UnimodularMatrix& g2, cplx z) {
    const auto g3 = g1 * g2;
    const cplx s = g1.sqrt_factor(g2.act(z)) * g2.sqrt_factor(z) / g3.sqrt_factor(z);
    return s.real() > 0 ? 1 : -1;
}

/// eps_d as an exponent of e(1/8): 0 for d = 1 mod 4, 2 (i.e. i) for d = 3 mod 4.
constexpr int epsilon8(std::int64_t d) { return mod_floor(d, 4) == 1 ? 0 : 2; }

struct EpsilonVerdict {
    bool pass = true;
    std::optional<std::pair<std::int64_t, std::int64_t>> counterexample;  // (d, 0) or (d1, d2)
};

/// Checks e((1-d)/8) = (2/d) eps_d and eps_{d1 d2} = eps_{d1} eps_{d2} (-1)^((d1-1)/2 (d2-1)/2)
/// exactly (as 8th roots of unity) for all odd d, d1, d2 in [lo, hi].
inline EpsilonVerdict epsilon_identities(std::int64_t lo, std::int64_t hi) {
    auto m8 = [](std::int64_t x) { return mod_floor(x, 8); };
    for (std::int64_t d = lo; d <= hi; ++d) {
        if (d % 2 == 0) continue;
        const std::int64_t lhs = m8(1 - d);
        const std::int64_t rhs = m8((kronecker(2, d) < 0 ? 4 : 0) + epsilon8(d));
        if (lhs != rhs) return {false, std::pair{d, std::int64_t{0}}};
    }
    for (std::int64_t d1 = lo; d1 <= hi; ++d1) {
        if (d1 % 2 == 0) continue;
        for (std::int64_t d2 = lo; d2 <= hi; ++d2) {
            if (d2 % 2 == 0) continue;
            const std::int64_t sign = mod_floor((d1 - 1) / 2 * ((d2 - 1) / 2), 2) ? 4 : 0;
            if (m8(epsilon8(d1 * d2)) != m8(epsilon8(d1) + epsilon8(d2) + sign))
                return {false, std::pair{d1, d2}};
        }
    }
    return {};
}

}  // namespace etakit::numeric
