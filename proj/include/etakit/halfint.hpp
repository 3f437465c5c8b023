#pragma once

// Half-integral weight forms with eta multiplier, carried as (series, lambda,
// r, certificate): every HalfIntForm is certified in S_{lambda+1/2}(1, nu_eta^r)
// mod l at construction.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"
#include "qseries.hpp"
#include "spaces.hpp"

namespace etakit {

struct HalfIntForm {
    FSeries series;
    std::int64_t lambda = 0;
    std::int64_t r = 1;
    MembershipCertificate certificate;

    std::uint64_t ell() const { return series.ring().ell(); }
    int r0() const { return static_cast<int>(r % 24); }
};

/// Packages f with a fresh certificate; a failed certification is a hard error.
inline HalfIntForm certify(FSeries f, std::int64_t lambda, std::int64_t r) {
    auto m = eta_membership(f, lambda, r);
    if (auto* bad = std::get_if<NotMember>(&m))
        throw certification_failure("series is not in " +
                                        eta_space_params(lambda, r, static_cast<std::int64_t>(
                                                                        f.ring().ell()))
                                            .ref()
                                            .describe(),
                                    bad->first_mismatch);
    return {std::move(f), lambda, r, std::get<MembershipCertificate>(std::move(m))};
}

/// eta^r mod l in S_{(r-1)/2+1/2}(1, nu_eta^r).
inline HalfIntForm eta_form(std::int64_t r, std::int64_t ell, std::int64_t prec) {
    require_eta_params(0, r);
    return certify(eta_power(PrimeField(ell), r, prec), (r - 1) / 2, r);
}

inline HalfIntForm scale_form(const HalfIntForm& f, PrimeField::value_type c) {
    return certify(scale(f.series, c), f.lambda, f.r);
}

/// Sum of two forms with the same multiplier class whose weights agree mod
/// l - 1; the result is certified in the larger weight (E_{l-1} = 1 mod l).
inline HalfIntForm add_forms(const HalfIntForm& f, const HalfIntForm& g) {
    const auto ell = static_cast<std::int64_t>(f.ell());
    if (f.ell() != g.ell()) throw ring_mismatch("add_forms: different primes");
    if (f.r0() != g.r0()) throw invalid_argument("add_forms: multiplier exponents differ mod 24");
    if (mod_floor(f.lambda - g.lambda, ell - 1) != 0)
        throw invalid_argument("add_forms: weights differ mod l - 1");
    const auto& top = f.lambda >= g.lambda ? f : g;
    return certify(add(f.series, g.series), top.lambda, top.r);
}

/// Theta(F), certified in S_{lambda+l+1+1/2}(1, nu_eta^r).
inline HalfIntForm theta_lift(const HalfIntForm& F) {
    const auto ell = static_cast<std::int64_t>(F.ell());
    return certify(theta_op(F.series), F.lambda + ell + 1, F.r);
}

inline HalfIntForm theta_lift(const HalfIntForm& F, std::int64_t times) {
    HalfIntForm g = F;
    for (std::int64_t i = 0; i < times; ++i) g = theta_lift(g);
    return g;
}

/// G | U_l for G supported on indices divisible by l, certified in the least
/// weight lambda* with l(2 lambda* + 1) <= 2 lambda + 1.
inline HalfIntForm u_ell_descent(const HalfIntForm& G) {
    const auto ell = static_cast<std::int64_t>(G.ell());
    for (auto n : G.series.support())
        if (n % ell != 0)
            throw invalid_argument("u_ell_descent: coefficient at index " + std::to_string(n) +
                                   " not divisible by l");
    const auto h = u_op(G.series, ell);
    const std::int64_t r_new = mod_floor(G.r * ell, 24);
    std::optional<std::int64_t> first_bad;
    for (std::int64_t lam = 0; ell * (2 * lam + 1) <= 2 * G.lambda + 1; ++lam) {
        auto m = eta_membership(h, lam, r_new);
        if (is_member(m)) return {h, lam, r_new, std::get<MembershipCertificate>(std::move(m))};
        if (!first_bad) first_bad = std::get<NotMember>(m).first_mismatch;
    }
    throw certification_failure("u_ell_descent: no certified weight within the descent bound",
                                first_bad.value_or(-1));
}

/// Parameters of T(p^2) on weight lambda_int + 1/2.
struct HeckeSpec {
    std::int64_t p = 5;
    std::int64_t lambda_int = 0;
    bool char12 = true;
    int eps_p = 1;  // sign of the eigenvalue when the form is supported on (n/p) in {0, eps_p}
};

inline void require_hecke_prime(std::int64_t p, std::int64_t ell) {
    if (p < 5 || !is_prime(p)) throw invalid_argument("Hecke prime must be a prime >= 5");
    if (p == ell) throw invalid_argument("Hecke prime must differ from l");
}

/// b(n) = a(p^2 n) + chi(p) ((-1)^lambda n / p) p^(lambda-1) a(n) + p^(2 lambda - 1) a(n/p^2),
/// chi(p) = (12/p) when char12 is set; precision ceil(P / p^2).
inline FSeries hecke_tp2(const FSeries& f, const HeckeSpec& spec) {
    const auto& F = f.ring();
    const auto ell = static_cast<std::int64_t>(F.ell());
    const std::int64_t p = spec.p, p2 = p * p, lam = spec.lambda_int;
    require_hecke_prime(p, ell);
    const std::int64_t P = (f.prec() + p2 - 1) / p2;
    const int chi = spec.char12 ? kronecker(12, p) : 1;
    const auto mid = F.pow(F.from_int(p), lam - 1);
    const auto last = F.pow(F.from_int(p), 2 * lam - 1);
    const std::int64_t sgn = (lam % 2 == 0) ? 1 : -1;
    std::vector<PrimeField::value_type> c(static_cast<std::size_t>(P), 0);
    for (std::int64_t n = 0; n < P; ++n) {
        auto b = f[p2 * n];
        const int sym = chi * kronecker(sgn * n, p);
        if (sym != 0) b = F.add(b, F.mul(F.mul(F.from_int(sym), mid), f[n]));
        if (n % p2 == 0) b = F.add(b, F.mul(last, f[n / p2]));
        c[n] = b;
    }
    return FSeries::from_coeffs(F, std::move(c), f.residue());
}

/// eps_p chi(p) ((-1)^lambda / p) (p^lambda + p^(lambda-1)) mod l.
inline PrimeField::value_type hecke_eigenvalue(const HeckeSpec& spec, const PrimeField& F) {
    const std::int64_t p = spec.p, lam = spec.lambda_int;
    const int sym = spec.eps_p * (spec.char12 ? kronecker(12, p) : 1) *
                    kronecker(lam % 2 == 0 ? 1 : -1, p);
    const auto sum = F.add(F.pow(F.from_int(p), lam), F.pow(F.from_int(p), lam - 1));
    return F.mul(F.from_int(sym), sum);
}

struct HeckeVerdict {
    bool pass = false;
    std::int64_t depth = 0;
    std::optional<std::int64_t> witness;
    PrimeField::value_type eigenvalue = 0;
    explicit operator bool() const { return pass; }
};

/// For g = Theta(f) with f of weight lambda + 1/2 (lambda even, r = 1 mod 24)
/// tests g | T(p^2) = (12/p)(p^(lbar+2) + p^(lbar+1)) g mod l, lbar = lambda mod (l-1).
inline HeckeVerdict bruinier_ono_check(const HalfIntForm& g, std::int64_t p) {
    const auto& F = g.series.ring();
    const auto ell = static_cast<std::int64_t>(F.ell());
    require_hecke_prime(p, ell);
    if (p % ell == 1) throw invalid_argument("bruinier_ono_check: p = 1 mod l excluded");
    if (g.lambda % 2 != 0)
        throw invalid_argument("bruinier_ono_check: only the even-weight pathway is supported");
    if (g.r0() != 1) throw invalid_argument("bruinier_ono_check: requires r = 1 mod 24");
    if (g.lambda < ell + 1) throw invalid_argument("bruinier_ono_check: g must be a theta lift");

    const std::int64_t lbar = mod_floor(g.lambda - ell - 1, ell - 1);
    const auto pF = F.from_int(p);
    const auto eig = F.mul(F.from_int(kronecker(12, p)),
                           F.add(F.pow(pF, lbar + 2), F.pow(pF, lbar + 1)));
    const auto image = hecke_tp2(g.series, {p, g.lambda, true, 1});
    const auto target = scale(g.series, eig);
    const auto depth = std::min(image.prec(), target.prec());
    const auto bad = first_mismatch(image, target, depth);
    return {!bad, depth, bad, eig};
}

/// A_t(n) = sum_{d | n} (-1/d)^lambda (12t/d) d^(lambda-1) a(t n^2 / d^2) mod l, n = 1..n_max.
inline std::vector<PrimeField::value_type> shimura_coeffs(const FSeries& f, std::int64_t t,
                                                          std::int64_t lambda, std::int64_t n_max) {
    if (!is_squarefree(t) || std::gcd(t, std::int64_t{6}) != 1)
        throw invalid_argument("shimura_coeffs: t must be squarefree with gcd(t, 6) = 1");
    if (lambda < 0) throw invalid_argument("shimura_coeffs: lambda must be nonnegative");
    if (f.prec() <= t * n_max * n_max)
        throw insufficient_precision("shimura_coeffs", t * n_max * n_max + 1, f.prec());
    const auto& F = f.ring();
    const auto ell = static_cast<std::int64_t>(F.ell());
    std::vector<PrimeField::value_type> A;
    A.reserve(static_cast<std::size_t>(n_max));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        PrimeField::value_type s = 0;
        for (auto d : divisors(n)) {
            const auto coeff = f[t * (n / d) * (n / d)];
            const int sym = (lambda % 2 == 0 ? 1 : kronecker(-1, d)) * kronecker(12 * t, d);
            if (coeff == 0 || sym == 0) continue;
            if (lambda == 0 && d % ell == 0)
                throw invalid_argument("shimura_coeffs: d^-1 undefined mod l at d = " +
                                       std::to_string(d));
            const auto term = F.mul(F.pow(F.from_int(d), lambda - 1), coeff);
            s = sym > 0 ? F.add(s, term) : F.sub(s, term);
        }
        A.push_back(s);
    }
    return A;
}

/// sum (12/n) n^lambda q^(n^2/24) mod l.
inline FSeries canonical_T1(std::int64_t lambda, std::int64_t ell, std::int64_t prec) {
    const PrimeField F(ell);
    std::vector<PrimeField::value_type> c(static_cast<std::size_t>(prec), 0);
    for (std::int64_t n = 1; n * n < prec; ++n)
        c[n * n] = F.mul(F.from_int(kronecker(12, n)), F.pow(F.from_int(n), lambda));
    return FSeries::from_coeffs(F, std::move(c), 1);
}

/// sum (12/n) q^(l n^2/24) mod l.
inline FSeries canonical_T2(std::int64_t ell, std::int64_t prec) {
    const PrimeField F(ell);
    std::vector<PrimeField::value_type> c(static_cast<std::size_t>(prec), 0);
    for (std::int64_t n = 1; ell * n * n < prec; ++n) c[ell * n * n] = F.from_int(kronecker(12, n));
    return FSeries::from_coeffs(F, std::move(c), static_cast<int>(ell % 24));
}

}  // namespace etakit
