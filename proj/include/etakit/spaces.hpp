#pragma once

// Level-one spaces modulo l: Miller-style echelon bases of M_k(1) and S_k(1),
// realized bases eta^r0 * M_w(1) of the eta-multiplier spaces
// S_{lambda+1/2}(1, nu_eta^r), membership certificates, filtrations and the
// Sturm-bound congruence test.

#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "qseries.hpp"

namespace etakit {

struct Dims {
    std::int64_t full = 0;
    std::int64_t cusp = 0;
    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Dimensions of M_k(1) and S_k(1).
constexpr Dims dims(std::int64_t k) {
    if (k < 0 || k % 2 != 0) return {};
    const std::int64_t m = (k % 12 == 2) ? k / 12 : k / 12 + 1;
    return {m, k >= 4 ? m - 1 : 0};
}

/// Number of leading integer exponents (q^0 .. q^{floor(k/12)}) whose
/// agreement forces two weight-k level-one forms to agree.
constexpr std::int64_t sturm_depth(std::int64_t k) { return k / 12 + 1; }

template <class Ring>
struct Generators {
    QExp24<Ring> e4;
    QExp24<Ring> e6;
    QExp24<Ring> delta;
};

/// E4, E6 and Delta = eta^24, each known below prec (1/24-units).
template <class Ring>
Generators<Ring> generators(const Ring& R, std::int64_t prec) {
    std::vector<typename Ring::value_type> e4(static_cast<std::size_t>(prec), R.zero());
    std::vector<typename Ring::value_type> e6(static_cast<std::size_t>(prec), R.zero());
    if (prec > 0) {
        e4[0] = R.from_int(1);
        e6[0] = R.from_int(1);
    }
    for (std::int64_t n = 1; 24 * n < prec; ++n) {
        e4[24 * n] = R.from_int(240 * sigma(n, 3));
        e6[24 * n] = R.from_int(-504 * sigma(n, 5));
    }
    return {QExp24<Ring>::from_coeffs(R, std::move(e4), 0),
            QExp24<Ring>::from_coeffs(R, std::move(e6), 0), eta_power(R, 24, prec)};
}

enum class SpaceKind { full, cuspidal };

inline std::string to_string(SpaceKind k) { return k == SpaceKind::full ? "M" : "S"; }

/// Echelon basis of M_k(1) or S_k(1) mod l. Element i has coefficient 1 at
/// q^(pivot_i / 24) and 0 at every other pivot.
struct SpaceBasis {
    std::int64_t weight = 0;
    SpaceKind kind = SpaceKind::full;
    std::uint64_t ell = 0;
    std::int64_t prec = 0;
    std::vector<FSeries> elements;
    std::vector<std::int64_t> pivots;  // 1/24-units
};

/// Builds {Delta^j * E4^a * E6^b : weight k - 12j, 0 <= j < dim M_k}, with b
/// the least of 0..3 making k - 12j - 6b divisible by 4, and reduces mod l.
inline SpaceBasis miller_basis(std::int64_t k, std::int64_t ell, std::int64_t prec,
                               SpaceKind kind = SpaceKind::full) {
    const PrimeField F(ell);
    SpaceBasis B{k, kind, F.ell(), prec, {}, {}};
    const std::int64_t d = dims(k).full;
    if (d == 0) return B;
    if (24 * (d - 1) >= prec)
        throw insufficient_precision("miller_basis(k=" + std::to_string(k) + ")", 24 * (d - 1) + 1,
                                     prec);

    const auto gens = generators(F, prec);
    auto delta_pow = one(F, prec);
    std::vector<FSeries> rows;
    for (std::int64_t j = 0; j < d; ++j) {
        const std::int64_t rest = k - 12 * j;
        std::int64_t b = 0;
        while (b <= 3 && (rest - 6 * b < 0 || (rest - 6 * b) % 4 != 0)) ++b;
        // dims() guarantees a monomial exists; failing here is a dimension bug.
        if (b > 3) throw error("miller_basis: no monomial of weight " + std::to_string(rest));
        const std::int64_t a = (rest - 6 * b) / 4;
        auto row = mul(delta_pow, mul(pow(gens.e4, a), pow(gens.e6, b)));
        rows.push_back(truncate(row, prec));
        delta_pow = truncate(mul(delta_pow, gens.delta), prec);
    }
    // Clear every pivot column above the diagonal, highest pivot first.
    for (std::int64_t j = d - 1; j >= 0; --j) {
        for (std::int64_t i = 0; i < j; ++i) {
            const auto c = rows[i][24 * j];
            if (c != 0) rows[i] = sub(rows[i], scale(rows[j], c));
        }
    }
    const std::int64_t first = kind == SpaceKind::full ? 0 : 1;
    for (std::int64_t j = first; j < d; ++j) {
        B.elements.push_back(std::move(rows[j]));
        B.pivots.push_back(24 * j);
    }
    return B;
}

/// Identifies the space a certificate refers to.
struct SpaceRef {
    enum class Kind { full, cuspidal, eta } kind = Kind::full;
    std::int64_t weight = 0;  // integer weight (quotient weight w for eta spaces)
    std::int64_t lambda = 0;  // eta spaces: weight lambda + 1/2
    std::int64_t r = 0;       // eta spaces: multiplier exponent
    std::uint64_t ell = 0;

    std::string describe() const {
        if (kind == Kind::eta)
            return "S_{" + std::to_string(lambda) + "+1/2}(1, nu_eta^" + std::to_string(r) + ") mod " +
                   std::to_string(ell);
        return std::string(kind == Kind::full ? "M_" : "S_") + std::to_string(weight) + "(1) mod " +
               std::to_string(ell);
    }
    friend bool operator==(const SpaceRef&, const SpaceRef&) = default;
};

struct MembershipCertificate {
    std::vector<std::uint64_t> coordinates;
    std::int64_t depth = 0;  // indices [0, depth) were matched
    SpaceRef space;
};

struct NotMember {
    std::int64_t first_mismatch = 0;
};

using Membership = std::variant<MembershipCertificate, NotMember>;

inline bool is_member(const Membership& m) {
    return std::holds_alternative<MembershipCertificate>(m);
}

/// Reads coordinates of f off the pivots of an echelon basis, then checks
/// that the combination reproduces f at every index below depth.
inline Membership solve_echelon(const FSeries& f, const std::vector<FSeries>& elements,
                                const std::vector<std::int64_t>& pivots, std::int64_t depth,
                                const SpaceRef& space) {
    if (depth > f.prec()) throw insufficient_precision("membership depth", depth, f.prec());
    for (const auto& b : elements) {
        if (!(b.ring() == f.ring())) throw ring_mismatch("basis and series over different fields");
        if (depth > b.prec()) throw insufficient_precision("basis precision", depth, b.prec());
    }
    const auto& F = f.ring();
    std::vector<PrimeField::value_type> residual(f.coeffs().begin(), f.coeffs().begin() + depth);
    MembershipCertificate cert{{}, depth, space};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const auto p = pivots[i];
        // Pivots at or past depth do not affect the check below depth.
        const auto c = p < depth ? residual[p] : (p < f.prec() ? f[p] : 0);
        cert.coordinates.push_back(c);
        if (c == 0) continue;
        for (auto n : elements[i].support()) {
            if (n >= depth) break;
            residual[n] = F.sub(residual[n], F.mul(c, elements[i][n]));
        }
    }
    for (std::int64_t n = 0; n < depth; ++n)
        if (residual[n] != 0) return NotMember{n};
    return cert;
}

/// Coordinates of f in a level-one basis, checked below depth (1/24-units).
inline Membership coordinates(const FSeries& f, const SpaceBasis& basis, std::int64_t depth) {
    const SpaceRef ref{basis.kind == SpaceKind::full ? SpaceRef::Kind::full : SpaceRef::Kind::cuspidal,
                       basis.weight, 0, 0, basis.ell};
    return solve_echelon(f, basis.elements, basis.pivots, depth, ref);
}

/// Least k' = k mod (l-1) such that f agrees with a form of weight k' to the
/// Sturm depth of the original weight k. f must be a nonzero reduction in M_k.
inline std::int64_t filtration(const FSeries& f, std::int64_t k) {
    const auto ell = static_cast<std::int64_t>(f.ring().ell());
    const std::int64_t depth = 24 * sturm_depth(k);
    if (f.prec() < depth) throw insufficient_precision("filtration", depth, f.prec());
    if (truncate(f, depth).is_zero()) throw invalid_argument("filtration: zero series");
    for (std::int64_t kp = mod_floor(k, ell - 1); kp <= k; kp += ell - 1) {
        if (is_member(coordinates(f, miller_basis(kp, ell, depth), depth))) return kp;
    }
    throw certification_failure("filtration: series does not certify in weight " + std::to_string(k),
                                depth);
}

/// True iff f and g agree at every integer exponent <= floor(k/12) + 1.
template <class Ring>
bool sturm_check(const QExp24<Ring>& f, const QExp24<Ring>& g, std::int64_t k) {
    const std::int64_t depth = 24 * (sturm_depth(k) + 1) - 23;
    return !first_mismatch(f, g, depth).has_value();
}

/// Realized basis eta^r0 * M_w(1) of S_{lambda+1/2}(1, nu_eta^r), where
/// r0 = r mod 24 and w = lambda + (1 - r0)/2.
struct EtaSpaceDescriptor {
    std::int64_t lambda = 0;
    std::int64_t r = 0;
    int r0 = 0;
    std::int64_t w = 0;
    std::uint64_t ell = 0;
    std::vector<FSeries> basis;
    std::vector<std::int64_t> pivots;

    SpaceRef ref() const { return {SpaceRef::Kind::eta, w, lambda, r, ell}; }

    /// Certification depth in 1/24-units: the Sturm depth of M_w carried
    /// through multiplication by eta^r0.
    std::int64_t depth() const { return 24 * sturm_depth(std::max<std::int64_t>(w, 0)) + r0; }
};

inline void require_eta_params(std::int64_t lambda, std::int64_t r) {
    if (lambda < 0) throw invalid_argument("lambda must be nonnegative");
    if (r <= 0 || std::gcd(r, std::int64_t{6}) != 1)
        throw invalid_argument("multiplier exponent r must be positive with gcd(r, 6) = 1, got " +
                               std::to_string(r));
}

inline EtaSpaceDescriptor eta_space_params(std::int64_t lambda, std::int64_t r, std::int64_t ell) {
    require_eta_params(lambda, r);
    EtaSpaceDescriptor D;
    D.lambda = lambda;
    D.r = r;
    D.r0 = static_cast<int>(r % 24);
    D.w = lambda + (1 - D.r0) / 2;
    D.ell = static_cast<std::uint64_t>(ell);
    return D;
}

inline EtaSpaceDescriptor eta_space_basis(std::int64_t lambda, std::int64_t r, std::int64_t ell,
                                          std::int64_t prec) {
    auto D = eta_space_params(lambda, r, ell);
    const PrimeField F(ell);
    if (D.w < 0 || D.w % 2 != 0 || dims(D.w).full == 0) return D;
    const auto d = dims(D.w).full;
    if (D.r0 + 24 * (d - 1) >= prec)
        throw insufficient_precision("eta_space_basis", D.r0 + 24 * (d - 1) + 1, prec);
    const auto M = miller_basis(D.w, ell, prec);
    const auto eta_r0 = eta_power(F, D.r0, prec);
    for (std::size_t i = 0; i < M.elements.size(); ++i) {
        D.basis.push_back(truncate(mul(eta_r0, M.elements[i]), prec));
        D.pivots.push_back(D.r0 + M.pivots[i]);
    }
    return D;
}

/// Certifies f in S_{lambda+1/2}(1, nu_eta^r) mod l to the space's depth.
inline Membership eta_membership(const FSeries& f, std::int64_t lambda, std::int64_t r) {
    const auto ell = static_cast<std::int64_t>(f.ring().ell());
    const auto params = eta_space_params(lambda, r, ell);
    if (!f.supported_on_residue(params.r0))
        throw invalid_argument("eta_membership: series not supported on n = " +
                               std::to_string(params.r0) + " mod 24");
    const auto depth = params.depth();
    if (f.prec() < depth) throw insufficient_precision("eta_membership", depth, f.prec());
    const auto D = eta_space_basis(lambda, r, ell, depth);
    return solve_echelon(f, D.basis, D.pivots, depth, D.ref());
}

}  // namespace etakit
