#pragma once

// Truncated q-expansions indexed in 1/24-units.
//
// A QExp24 holds the coefficients a(0), ..., a(P-1) of sum a(n) q^(n/24);
// every coefficient with index below the precision P is known exactly.
// Integer-weight forms are the special case where only indices divisible
// by 24 carry nonzero coefficients.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "ring.hpp"

namespace etakit {

template <CoefficientRing Ring>
class QExp24 {
public:
    using ring_type = Ring;
    using value_type = typename Ring::value_type;

    /// The zero series known to precision prec.
    QExp24(Ring ring, std::int64_t prec, std::optional<int> residue = std::nullopt)
        : ring_(std::move(ring)), residue_(residue) {
        if (prec < 0) throw invalid_argument("QExp24: negative precision");
        check_residue_value();
        coeffs_.assign(static_cast<std::size_t>(prec), ring_.zero());
    }

    /// Takes coefficients a(0..P-1); P is coeffs.size(). Throws if a nonzero
    /// coefficient lies outside the declared residue class.
    static QExp24 from_coeffs(Ring ring, std::vector<value_type> coeffs,
                              std::optional<int> residue = std::nullopt) {
        QExp24 f(std::move(ring), 0, residue);
        f.coeffs_ = std::move(coeffs);
        f.check_support();
        return f;
    }

    static QExp24 from_terms(Ring ring, std::int64_t prec,
                             const std::vector<std::pair<std::int64_t, value_type>>& terms,
                             std::optional<int> residue = std::nullopt) {
        QExp24 f(std::move(ring), prec, residue);
        for (const auto& [n, c] : terms) {
            if (n < 0 || n >= prec) throw invalid_argument("QExp24: term index outside [0, prec)");
            f.coeffs_[static_cast<std::size_t>(n)] = c;
        }
        f.check_support();
        return f;
    }

    const Ring& ring() const { return ring_; }
    std::int64_t prec() const { return static_cast<std::int64_t>(coeffs_.size()); }
    std::optional<int> residue() const { return residue_; }
    std::span<const value_type> coeffs() const { return coeffs_; }

    const value_type& operator[](std::int64_t n) const {
        if (n < 0 || n >= prec())
            throw insufficient_precision("QExp24: coefficient index " + std::to_string(n), n + 1,
                                         prec());
        return coeffs_[static_cast<std::size_t>(n)];
    }

    /// Smallest index with a nonzero coefficient, or prec() if none is known.
    std::int64_t valuation() const {
        for (std::int64_t n = 0; n < prec(); ++n)
            if (!ring_.is_zero(coeffs_[static_cast<std::size_t>(n)])) return n;
        return prec();
    }

    bool is_zero() const { return valuation() == prec(); }

    std::vector<std::int64_t> support() const {
        std::vector<std::int64_t> s;
        for (std::int64_t n = 0; n < prec(); ++n)
            if (!ring_.is_zero(coeffs_[static_cast<std::size_t>(n)])) s.push_back(n);
        return s;
    }

    /// True if every nonzero coefficient has index congruent to r0 mod 24.
    bool supported_on_residue(int r0) const {
        for (auto n : support())
            if (mod_floor(n, 24) != r0) return false;
        return true;
    }

    friend bool operator==(const QExp24& a, const QExp24& b) {
        return a.ring_ == b.ring_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check_residue_value() const {
        if (residue_ && (*residue_ < 0 || *residue_ >= 24))
            throw invalid_argument("QExp24: residue must lie in [0, 24)");
    }
    void check_support() const {
        check_residue_value();
        if (residue_ && !supported_on_residue(*residue_))
            throw invalid_argument("QExp24: coefficient outside residue class " +
                                   std::to_string(*residue_));
    }

    Ring ring_;
    std::vector<value_type> coeffs_;
    std::optional<int> residue_;
};

using ZSeries = QExp24<Integers>;
using FSeries = QExp24<PrimeField>;

namespace detail {

template <class Ring>
void require_same_ring(const QExp24<Ring>& f, const QExp24<Ring>& g) {
    if (!(f.ring() == g.ring()))
        throw ring_mismatch("series over " + f.ring().tag() + " and " + g.ring().tag());
}

template <class Ring>
std::optional<int> sum_residue(const QExp24<Ring>& f, const QExp24<Ring>& g) {
    if (f.is_zero()) return g.residue();
    if (g.is_zero()) return f.residue();
    return f.residue() == g.residue() ? f.residue() : std::nullopt;
}

}  // namespace detail

template <class Ring>
QExp24<Ring> truncate(const QExp24<Ring>& f, std::int64_t prec) {
    if (prec > f.prec()) throw insufficient_precision("truncate", prec, f.prec());
    auto c = f.coeffs();
    return QExp24<Ring>::from_coeffs(f.ring(), {c.begin(), c.begin() + prec}, f.residue());
}

template <class Ring>
QExp24<Ring> add(const QExp24<Ring>& f, const QExp24<Ring>& g) {
    detail::require_same_ring(f, g);
    const auto& R = f.ring();
    const std::int64_t P = std::min(f.prec(), g.prec());
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(P));
    for (std::int64_t n = 0; n < P; ++n) c[n] = R.add(f[n], g[n]);
    return QExp24<Ring>::from_coeffs(R, std::move(c), detail::sum_residue(f, g));
}

template <class Ring>
QExp24<Ring> sub(const QExp24<Ring>& f, const QExp24<Ring>& g) {
    detail::require_same_ring(f, g);
    const auto& R = f.ring();
    const std::int64_t P = std::min(f.prec(), g.prec());
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(P));
    for (std::int64_t n = 0; n < P; ++n) c[n] = R.sub(f[n], g[n]);
    return QExp24<Ring>::from_coeffs(R, std::move(c), detail::sum_residue(f, g));
}

template <class Ring>
QExp24<Ring> scale(const QExp24<Ring>& f, const typename Ring::value_type& s) {
    const auto& R = f.ring();
    std::vector<typename Ring::value_type> c(f.coeffs().begin(), f.coeffs().end());
    for (auto& x : c) x = R.mul(x, s);
    return QExp24<Ring>::from_coeffs(R, std::move(c), f.residue());
}

template <class Ring>
QExp24<Ring> negate(const QExp24<Ring>& f) {
    return scale(f, f.ring().from_int(-1));
}

/// Product; precision min(P_f + v_g, P_g + v_f) with v the valuations.
template <class Ring>
QExp24<Ring> mul(const QExp24<Ring>& f, const QExp24<Ring>& g) {
    detail::require_same_ring(f, g);
    const auto& R = f.ring();
    const std::int64_t vf = f.valuation(), vg = g.valuation();
    const std::int64_t P = std::min(f.prec() + vg, g.prec() + vf);
    std::optional<int> residue;
    if (f.residue() && g.residue()) residue = (*f.residue() + *g.residue()) % 24;

    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(P), R.zero());
    const auto gs = g.support();
    for (std::int64_t i = vf; i < f.prec() && i < P; ++i) {
        const auto& a = f[i];
        if (R.is_zero(a)) continue;
        for (auto j : gs) {
            if (i + j >= P) break;
            c[i + j] = R.add(c[i + j], R.mul(a, g[j]));
        }
    }
    return QExp24<Ring>::from_coeffs(R, std::move(c), residue);
}

template <class Ring>
QExp24<Ring> one(const Ring& R, std::int64_t prec) {
    return QExp24<Ring>::from_terms(R, prec, {{0, R.from_int(1)}}, 0);
}

/// f^e by repeated squaring. f^0 is the constant 1 known to precision P_f - v_f.
template <class Ring>
QExp24<Ring> pow(const QExp24<Ring>& f, std::int64_t e) {
    if (e < 0) throw invalid_argument("pow: negative exponent");
    if (e == 0) return one(f.ring(), std::max<std::int64_t>(1, f.prec() - f.valuation()));
    std::optional<QExp24<Ring>> result;
    QExp24<Ring> base = f;
    while (true) {
        if (e & 1) result = result ? mul(*result, base) : base;
        e >>= 1;
        if (!e) break;
        base = mul(base, base);
    }
    return *result;
}

template <class Ring>
QExp24<Ring> operator+(const QExp24<Ring>& f, const QExp24<Ring>& g) { return add(f, g); }
template <class Ring>
QExp24<Ring> operator-(const QExp24<Ring>& f, const QExp24<Ring>& g) { return sub(f, g); }
template <class Ring>
QExp24<Ring> operator*(const QExp24<Ring>& f, const QExp24<Ring>& g) { return mul(f, g); }

/// Coefficient-wise reduction from the integers to F_l.
inline FSeries reduce(const ZSeries& f, const PrimeField& F) {
    std::vector<PrimeField::value_type> c;
    c.reserve(static_cast<std::size_t>(f.prec()));
    for (const auto& x : f.coeffs()) c.push_back(F.from_big(x));
    return FSeries::from_coeffs(F, std::move(c), f.residue());
}

/// eta = sum_{n>=1} (12/n) q^(n^2/24), the pentagonal-number form of
/// q^(1/24) prod (1 - q^n).
template <class Ring>
QExp24<Ring> eta_series(const Ring& R, std::int64_t prec) {
    if (prec < 2) throw invalid_argument("eta_series: prec must be >= 2");
    QExp24<Ring> zero(R, prec, 1);
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(prec), R.zero());
    for (std::int64_t n = 1; n * n < prec; ++n) c[n * n] = R.from_int(kronecker(12, n));
    return QExp24<Ring>::from_coeffs(R, std::move(c), 1);
}

/// eta^r known to exactly the requested precision.
template <class Ring>
QExp24<Ring> eta_power(const Ring& R, std::int64_t r, std::int64_t prec) {
    if (r < 0) throw invalid_argument("eta_power: negative exponent");
    if (r == 0) return one(R, prec);
    const auto base = eta_series(R, std::max<std::int64_t>(2, prec - r + 1));
    auto p = pow(base, r);
    if (p.prec() < prec) return QExp24<Ring>(R, prec, static_cast<int>(r % 24));
    return truncate(p, prec);
}

/// Theta = q d/dq: a(n) -> (n/24) a(n) mod l.
inline FSeries theta_op(const FSeries& f, std::int64_t times = 1) {
    const auto& F = f.ring();
    const auto inv24 = F.inv(24);
    std::vector<PrimeField::value_type> c(f.coeffs().begin(), f.coeffs().end());
    for (std::int64_t n = 0; n < f.prec(); ++n) {
        if (c[n] == 0) continue;
        const auto mult = F.pow(F.mul(F.from_int(n), inv24), times);
        c[n] = F.mul(c[n], mult);
    }
    return FSeries::from_coeffs(F, std::move(c), f.residue());
}

/// U_m: b(n) = a(mn), precision ceil(P/m).
template <class Ring>
QExp24<Ring> u_op(const QExp24<Ring>& f, std::int64_t m) {
    if (m < 1) throw invalid_argument("u_op: m must be >= 1");
    const std::int64_t P = (f.prec() + m - 1) / m;
    std::vector<typename Ring::value_type> c;
    c.reserve(static_cast<std::size_t>(P));
    for (std::int64_t n = 0; n < P; ++n) c.push_back(f[m * n]);
    std::optional<int> residue;
    if (f.residue() && std::gcd(m, std::int64_t{24}) == 1)
        residue = static_cast<int>(mod_floor(*f.residue() * inv_mod24(m), 24));
    return QExp24<Ring>::from_coeffs(f.ring(), std::move(c), residue);
}

/// V_m: b(mn) = a(n), precision mP.
template <class Ring>
QExp24<Ring> v_op(const QExp24<Ring>& f, std::int64_t m) {
    if (m < 1) throw invalid_argument("v_op: m must be >= 1");
    const auto& R = f.ring();
    std::vector<typename Ring::value_type> c(static_cast<std::size_t>(m * f.prec()), R.zero());
    for (std::int64_t n = 0; n < f.prec(); ++n) c[m * n] = f[n];
    std::optional<int> residue;
    if (f.residue()) residue = static_cast<int>(mod_floor(*f.residue() * m, 24));
    return QExp24<Ring>::from_coeffs(R, std::move(c), residue);
}

enum class TwistKind { quadratic, trivial };

/// f (x) psi with psi = (./p) or the trivial character mod p.
template <class Ring>
QExp24<Ring> twist(const QExp24<Ring>& f, std::int64_t p, TwistKind kind) {
    if (p < 5 || !is_prime(p)) throw invalid_argument("twist: p must be a prime >= 5");
    const auto& R = f.ring();
    std::vector<typename Ring::value_type> c(f.coeffs().begin(), f.coeffs().end());
    for (std::int64_t n = 0; n < f.prec(); ++n) {
        const int chi = kind == TwistKind::quadratic ? kronecker(n, p) : (n % p != 0 ? 1 : 0);
        if (chi == 0)
            c[n] = R.zero();
        else if (chi < 0)
            c[n] = R.neg(c[n]);
    }
    return QExp24<Ring>::from_coeffs(R, std::move(c), f.residue());
}

/// Groups nonzero indices n >= 1 by the squarefree part of n.
template <class Ring>
std::map<std::int64_t, std::vector<std::int64_t>> support_square_classes(const QExp24<Ring>& f) {
    std::map<std::int64_t, std::vector<std::int64_t>> classes;
    for (auto n : f.support())
        if (n >= 1) classes[squarefree_part(n)].push_back(n);
    return classes;
}

/// First index below depth where f and g differ, if any.
template <class Ring>
std::optional<std::int64_t> first_mismatch(const QExp24<Ring>& f, const QExp24<Ring>& g,
                                           std::int64_t depth) {
    detail::require_same_ring(f, g);
    if (depth > f.prec() || depth > g.prec())
        throw insufficient_precision("first_mismatch", depth, std::min(f.prec(), g.prec()));
    for (std::int64_t n = 0; n < depth; ++n)
        if (!(f[n] == g[n])) return n;
    return std::nullopt;
}

}  // namespace etakit
