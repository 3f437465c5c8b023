#pragma once

// Three-case classification of certified forms supported on the square
// classes 1 and l, plus the individual checks it is built from.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "halfint.hpp"
#include "qseries.hpp"

namespace etakit {

struct Check {
    std::string name;
    bool pass = false;
    std::int64_t depth = 0;
    std::optional<std::int64_t> witness;
};

struct ClassVerdict {
    std::map<std::int64_t, std::vector<std::int64_t>> classes;
    bool pass = false;
    std::int64_t depth = 0;  // finite prefix that was inspected
    std::optional<std::int64_t> witness;
};

/// Observed square classes of f; passes iff they lie in {1, l}.
inline ClassVerdict check_two_classes(const HalfIntForm& f) {
    const auto ell = static_cast<std::int64_t>(f.ell());
    ClassVerdict v{support_square_classes(f.series), true, f.series.prec(), std::nullopt};
    for (const auto& [t, indices] : v.classes) {
        if (t == 1 || t == ell) continue;
        const auto w = indices.front();
        if (!v.witness || w < *v.witness) v.witness = w;
        v.pass = false;
    }
    return v;
}

/// r = 1 or r = l mod 24.
inline bool check_multiplier(std::int64_t r, std::int64_t ell) {
    return mod_floor(r, 24) == 1 || mod_floor(r, 24) == mod_floor(ell, 24);
}

struct Verdict {
    bool pass = false;
    std::int64_t depth = 0;
    std::optional<std::int64_t> witness;
};

/// For odd lambda: Theta(f) must vanish identically (to precision).
inline Verdict odd_lambda_check(const HalfIntForm& f) {
    if (f.lambda % 2 == 0) throw invalid_argument("odd_lambda_check: lambda must be odd");
    const auto t = theta_op(f.series);
    const auto v = t.valuation();
    if (v == t.prec()) return {true, t.prec(), std::nullopt};
    return {false, t.prec(), v};
}

struct SpicyVerdict {
    bool pass = false;
    std::int64_t depth = 0;
    std::optional<std::int64_t> witness;
    PrimeField::value_type c = 0;
};

/// Small-weight check: for lambda' < (l-1)/2 a nonzero two-class form must be c * eta.
inline SpicyVerdict spicy_check(const HalfIntForm& g) {
    const auto ell = static_cast<std::int64_t>(g.ell());
    if (2 * g.lambda >= ell - 1) throw invalid_argument("spicy_check: requires lambda' < (l-1)/2");
    if (g.series.is_zero()) throw invalid_argument("spicy_check: form must be nonzero");
    const auto P = g.series.prec();
    if (g.lambda != 0 || g.r0() != 1) return {false, P, g.series.valuation(), 0};
    const auto c = g.series[1];
    const auto target = scale(eta_series(g.series.ring(), P), c);
    const auto bad = first_mismatch(g.series, target, P);
    return {!bad, P, bad, c};
}

enum class CaseTag { case1, case2, case3, zero, unclassified };

inline std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::case1: return "1";
        case CaseTag::case2: return "2";
        case CaseTag::case3: return "3";
        case CaseTag::zero: return "zero";
        case CaseTag::unclassified: return "unclassified";
    }
    return "unclassified";
}

struct CaseReport {
    CaseTag case_tag = CaseTag::unclassified;
    PrimeField::value_type a1 = 0;
    PrimeField::value_type al = 0;
    int r_class = 0;
    std::int64_t lambda_class = 0;
    bool hypothesis_ok = false;
    std::int64_t depth = 0;
    std::vector<Check> checks;
    std::optional<std::int64_t> witness;  // first mismatch when unclassified
};

/// Classifies a certified nonzero form supported on the square classes 1 and l.
///
/// Compares f with a(1) T1(lambda) + a(l) T2 over the whole known precision
/// (at least the certificate's Sturm depth) and tags the case by which of
/// a(1), a(l) is nonzero. A form outside the weight bound (lambda + 1/2 < l^2/2,
/// or lambda < 2 l^2 + l - 1 for Case 1), a congruence mismatch, or a case whose multiplier/weight conditions fail
/// is reported as unclassified with its data. Failing the square-class or
/// multiplier precondition is an error.
inline CaseReport classify(const HalfIntForm& f) {
    const auto& F = f.series.ring();
    const auto ell = static_cast<std::int64_t>(F.ell());
    const auto P = f.series.prec();

    CaseReport rep;
    rep.r_class = f.r0();
    rep.lambda_class = mod_floor(f.lambda, ell - 1);
    rep.hypothesis_ok = 2 * f.lambda + 1 < ell * ell;
    rep.depth = P;
    rep.checks.push_back({"certificate", true, f.certificate.depth, std::nullopt});

    if (f.series.is_zero()) {
        rep.case_tag = CaseTag::zero;
        return rep;
    }

    const auto classes = check_two_classes(f);
    if (!classes.pass)
        throw invalid_argument("classify: support outside square classes {1, l} at index " +
                               std::to_string(*classes.witness));
    rep.checks.push_back({"two-square-classes", true, classes.depth, std::nullopt});
    if (!check_multiplier(f.r, ell))
        throw invalid_argument("classify: multiplier exponent r is neither 1 nor l mod 24");
    rep.checks.push_back({"multiplier", true, 0, std::nullopt});

    rep.a1 = P > 1 ? f.series[1] : 0;
    rep.al = P > ell ? f.series[ell] : 0;
    const auto target = add(scale(canonical_T1(f.lambda, ell, P), rep.a1),
                            scale(canonical_T2(ell, P), rep.al));
    const auto bad = first_mismatch(f.series, target, P);
    rep.checks.push_back({"congruence", !bad, P, bad});
    if (bad) {
        rep.checks.push_back({"weight-bound", rep.hypothesis_ok, 0, std::nullopt});
        rep.witness = bad;
        rep.case_tag = CaseTag::unclassified;
        return rep;
    }

    const bool half = rep.lambda_class == (ell - 1) / 2;
    bool conditions = false;
    if (rep.a1 != 0 && rep.al != 0) {
        rep.case_tag = CaseTag::case3;
        conditions = rep.r_class == 1 && mod_floor(ell, 24) == 1 && half;
    } else if (rep.a1 != 0) {
        rep.case_tag = CaseTag::case1;
        conditions = rep.r_class == 1 && f.lambda % 2 == 0;
    } else {
        rep.case_tag = CaseTag::case2;
        conditions = rep.r_class == mod_floor(ell, 24) && half;
    }
    // Case 1 (r = 1, lambda even) holds under the wider bound lambda < 2 l^2 + l - 1.
    const bool bound_ok = rep.hypothesis_ok || (rep.case_tag == CaseTag::case1 && rep.r_class == 1 &&
                                                f.lambda % 2 == 0 && f.lambda < 2 * ell * ell + ell - 1);
    rep.checks.push_back({"weight-bound", bound_ok, 0, std::nullopt});
    rep.checks.push_back({"case-conditions", conditions, 0, std::nullopt});

    if (rep.case_tag == CaseTag::case1 && f.lambda > 0) {
        const auto proj = first_mismatch(theta_op(f.series, ell - 1), f.series, P);
        rep.checks.push_back({"theta-projector", !proj, P, proj});
        conditions = conditions && !proj;
    }
    if (rep.case_tag == CaseTag::case2) {
        const auto t = theta_op(f.series);
        const auto v = t.valuation();
        const bool ok = v == t.prec();
        rep.checks.push_back({"theta-kernel", ok, P, ok ? std::nullopt : std::optional(v)});
        conditions = conditions && ok;
    }

    if (!conditions || !bound_ok) rep.case_tag = CaseTag::unclassified;
    return rep;
}

}  // namespace etakit
