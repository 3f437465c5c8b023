#pragma once

// Verification suites shared by the CLI: scenario runs, the desk-scale
// checks around the classification, filtration laws, and multiplier numerics.

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "classify.hpp"
#include "halfint.hpp"
#include "numeric.hpp"
#include "report.hpp"
#include "scenario.hpp"
#include "spaces.hpp"

namespace etakit {

struct SuiteRow {
    std::string name;
    bool pass = false;
    std::string verdict;
    std::int64_t depth = 0;
    double seconds = 0;
};

namespace detail {

template <class Fn>
SuiteRow timed(std::string name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteRow row;
    try {
        row = fn();
    } catch (const std::exception& e) {
        row.pass = false;
        row.verdict = std::string("error: ") + e.what();
    }
    row.name = std::move(name);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace detail

struct ScenarioRun {
    CaseReport report;
    int exit = 0;
    std::vector<std::string> failed_expectations;
};

inline ScenarioRun run_scenario(const Scenario& s, std::int64_t ell) {
    const auto prec = effective_prec(eval_expr(s.prec, ell));
    const auto form = build_recipe(s.recipe, ell, prec);
    ScenarioRun run;
    run.report = classify(form);
    run.exit = exit_code(run.report);
    run.failed_expectations = check_expectations(s, run.report, ell, run.exit);
    return run;
}

inline SuiteRow scenario_row(const Scenario& s, std::int64_t ell) {
    return detail::timed(s.name + " l=" + std::to_string(ell), [&] {
        const auto run = run_scenario(s, ell);
        SuiteRow row;
        row.pass = run.failed_expectations.empty();
        row.verdict = "case " + to_string(run.report.case_tag);
        for (const auto& k : run.failed_expectations) row.verdict += " [expect." + k + " failed]";
        row.depth = run.report.depth;
        return row;
    });
}

/// Scenarios apply to l when they fix no prime of their own, or fix exactly l.
inline bool scenario_applies(const Scenario& s, std::int64_t ell) {
    return !s.ell || eval_expr(*s.ell, std::nullopt) == ell;
}

/// u_l descent of eta^l: expect eta at lambda* = 0, r' = 1, bound tight.
inline SuiteRow descent_row(std::int64_t ell) {
    return detail::timed("descent eta^l l=" + std::to_string(ell), [&] {
        const auto G = eta_form(ell, ell, 30 * ell + 48);
        const auto h = u_ell_descent(G);
        const auto eta = eta_series(PrimeField(ell), h.series.prec());
        SuiteRow row;
        row.pass = h.lambda == 0 && h.r == 1 && h.series == eta &&
                   ell * (2 * h.lambda + 1) == 2 * G.lambda + 1;
        row.verdict = "lambda*=" + std::to_string(h.lambda) + " r'=" + std::to_string(h.r);
        row.depth = h.certificate.depth;
        return row;
    });
}

/// Hecke eigenvalue congruence on Theta(eta) for all admissible 5 <= p <= p_max.
inline SuiteRow bruinier_ono_row(std::int64_t ell, std::int64_t p_max = 37) {
    return detail::timed("hecke T(p^2) on Theta(eta) l=" + std::to_string(ell), [&] {
        const std::int64_t prec = 60 * p_max * p_max;
        const auto g = theta_lift(eta_form(1, ell, prec));
        SuiteRow row;
        row.pass = true;
        int tested = 0;
        std::int64_t min_depth = prec;
        for (std::int64_t p = 5; p <= p_max; ++p) {
            if (!is_prime(p) || p % ell == 0 || p % ell == 1) continue;
            const auto v = bruinier_ono_check(g, p);
            ++tested;
            min_depth = std::min(min_depth, v.depth);
            if (!v.pass) {
                row.pass = false;
                row.verdict += "p=" + std::to_string(p) + " fails ";
            }
        }
        if (row.pass) row.verdict = std::to_string(tested) + " primes pass";
        row.depth = min_depth;
        return row;
    });
}

/// Odd-lambda pathway on eta^l when (l-1)/2 is odd.
inline std::optional<SuiteRow> odd_lambda_row(std::int64_t ell) {
    if (((ell - 1) / 2) % 2 == 0) return std::nullopt;
    return detail::timed("odd-lambda eta^l l=" + std::to_string(ell), [&] {
        const auto f = eta_form(ell, ell, 24 * ell + 48);
        const auto v = odd_lambda_check(f);
        return SuiteRow{"", v.pass, v.pass ? "Theta(f) = 0" : "Theta(f) != 0", v.depth, 0};
    });
}

/// Small-weight positive control: 3 eta is reported as c eta with c = 3.
inline SuiteRow spicy_row(std::int64_t ell) {
    return detail::timed("small-weight 3*eta l=" + std::to_string(ell), [&] {
        const auto g = scale_form(eta_form(1, ell, 24 * 8), 3);
        const auto v = spicy_check(g);
        return SuiteRow{"", v.pass && v.c == 3, "c=" + std::to_string(v.c), v.depth, 0};
    });
}

/// Filtration laws on random nonzero cusp forms of weight <= max_weight:
/// omega(Theta f) <= omega(f) + l + 1 with equality iff l does not divide
/// omega(f); omega(f^2) = 2 omega(f); certifying weights agree mod l - 1.
inline SuiteRow filtration_laws_row(std::int64_t ell, int samples = 50, std::int64_t max_weight = 48,
                                    std::uint64_t seed = 1) {
    return detail::timed("filtration laws l=" + std::to_string(ell), [&] {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(ell));
        std::vector<std::int64_t> weights;
        for (std::int64_t k = 12; k <= max_weight; k += 2)
            if (dims(k).cusp > 0) weights.push_back(k);
        const PrimeField F(ell);
        std::uniform_int_distribution<std::uint64_t> coef(0, F.ell() - 1);
        SuiteRow row;
        row.pass = true;
        int done = 0, failures = 0;
        while (done < samples) {
            const auto k = weights[rng() % weights.size()];
            const auto top = std::max(2 * k, k + 2 * (ell - 1));
            const std::int64_t prec = 24 * (sturm_depth(top) + 4);
            const auto S = miller_basis(k, ell, prec, SpaceKind::cuspidal);
            FSeries f(F, prec, 0);
            for (const auto& b : S.elements) f = add(f, scale(b, coef(rng)));
            if (truncate(f, 24 * sturm_depth(k)).is_zero()) continue;
            const auto tf = theta_op(f);
            if (truncate(tf, 24 * sturm_depth(k + ell + 1)).is_zero()) continue;
            ++done;

            const auto w = filtration(f, k);
            const auto wt = filtration(tf, k + ell + 1);
            const bool theta_ok = wt <= w + ell + 1 && ((wt == w + ell + 1) == (w % ell != 0));
            const bool square_ok = filtration(mul(f, f), 2 * k) == 2 * w;
            bool congruence_ok = true;
            // Weights not congruent mod l - 1 have no common Sturm bound, so
            // agreement is tested over the whole stored precision.
            for (std::int64_t kp = 0; kp <= k + 2 * (ell - 1); kp += 2) {
                if (is_member(coordinates(f, miller_basis(kp, ell, prec), prec)) &&
                    mod_floor(kp - k, ell - 1) != 0)
                    congruence_ok = false;
            }
            if (!(theta_ok && square_ok && congruence_ok)) ++failures;
        }
        row.pass = failures == 0;
        row.verdict = std::to_string(done) + " forms, " + std::to_string(failures) + " failures";
        return row;
    });
}

/// Random element of SL2(Z) with entries bounded by bound in absolute value.
inline numeric::UnimodularMatrix random_unimodular(std::mt19937_64& rng, std::int64_t bound) {
    std::uniform_int_distribution<std::int64_t> U(-bound, bound);
    while (true) {
        const auto a = U(rng), c = U(rng);
        if (c == 0) {
            if (a != 1 && a != -1) continue;
            return {a, U(rng), 0, a};
        }
        // Extended Euclid: a x + c y = 1.
        std::int64_t r0 = a, r1 = c, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (r1 != 0) {
            const auto q = r0 / r1;
            std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
            std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
            std::tie(y0, y1) = std::pair{y1, y0 - q * y1};
        }
        if (r0 != 1 && r0 != -1) continue;
        std::int64_t x = x0 * r0, y = y0 * r0;  // now a x + c y = 1
        // d = x + t c, b = -(y - t a); pick t bringing d near zero.
        const std::int64_t t = -x / c;
        const std::int64_t d = x + t * c, b = -(y - t * a);
        if (std::abs(b) > bound || std::abs(d) > bound) continue;
        return {a, b, c, d};
    }
}

struct MultiplierSummary {
    double max_eta_deviation = 0;
    double max_theta_deviation = 0;
    int cocycle_failures = 0;
    bool epsilon_ok = false;
    bool order_24_ok = true;
    int samples = 0;
};

/// 100 random gamma at z = i for eta, a sweep of Gamma_0(4) elements for
/// theta, the exact cocycle relation, and the epsilon identities.
inline MultiplierSummary multiplier_numeric(int samples = 100, std::uint64_t seed = 7) {
    using namespace numeric;
    std::mt19937_64 rng(seed);
    MultiplierSummary s;
    s.samples = samples;
    const cplx z(0, 1);
    for (int i = 0; i < samples; ++i) {
        const auto g = random_unimodular(rng, 50);
        const double y = std::min(g.act(z).imag(), z.imag());
        const int terms = eta_terms_for(y, 1e-13);
        s.max_eta_deviation = std::max(s.max_eta_deviation, verify_eta_transform(g, z, terms));
        const auto nu = eta_multiplier(g);
        if (std::abs(std::pow(nu.value(), 24) - cplx(1, 0)) > 1e-12 || (24 * nu.exponent) % 24 != 0)
            s.order_24_ok = false;

        const auto h = random_unimodular(rng, 50);
        const auto gh = g * h;
        const int sigma = cocycle_sign(g, h, z);
        const int lhs = static_cast<int>(mod_floor(eta_multiplier(gh).exponent + (sigma < 0 ? 12 : 0), 24));
        const int rhs = static_cast<int>(mod_floor(eta_multiplier(g).exponent + eta_multiplier(h).exponent, 24));
        if (lhs != rhs) ++s.cocycle_failures;
    }
    int theta_done = 0;
    while (theta_done < samples) {
        const auto g = random_unimodular(rng, 20);
        if (g.c() % 4 != 0 || g.d() % 2 == 0) continue;
        const cplx zt(0.05, 0.5);
        if (g.act(zt).imag() < 1e-3) continue;
        s.max_theta_deviation = std::max(s.max_theta_deviation, verify_theta_transform(g, zt));
        ++theta_done;
    }
    s.epsilon_ok = epsilon_identities(-99, 99).pass;
    return s;
}

}  // namespace etakit
