#include <gtest/gtest.h>

#include <etakit/halfint.hpp>

#include "support.hpp"

using namespace etakit;

TEST(ThetaLift, EtaModFive) {
    const auto g = theta_lift(eta_form(1, 5, 120));
    EXPECT_EQ(g.lambda, 6);
    EXPECT_EQ(g.r, 1);
    EXPECT_EQ(g.series[1], 4u);
}

TEST(ThetaLift, ZeroForm) {
    const auto z = certify(FSeries(PrimeField(5), 200, 1), 0, 1);
    const auto g = theta_lift(z);
    EXPECT_TRUE(g.series.is_zero());
    EXPECT_EQ(g.lambda, 6);
}

TEST(ThetaLift, IteratesStayCertified) {
    for (std::int64_t ell : {5, 7}) {
        const std::int64_t steps = ell - 1;
        const std::int64_t lam = steps * (ell + 1);
        const auto g = theta_lift(eta_form(1, ell, 24 * (lam / 12 + 2)), steps);
        EXPECT_EQ(g.lambda, lam);
        EXPECT_EQ(g.certificate.space.lambda, lam);
    }
}

TEST(ThetaLift, CongruentToCanonicalSum) {
    for (std::int64_t ell : {5, 7, 11, 13}) {
        const PrimeField F(ell);
        for (std::int64_t k = 1; k <= 3; ++k) {
            const std::int64_t P = 24 * (k * (ell + 1) / 12 + 4);
            auto g = theta_lift(eta_form(1, ell, P), k);
            const auto s = scale(g.series, F.pow(F.from_int(24), k));
            ASSERT_EQ(s, canonical_T1(2 * k, ell, P)) << "l=" << ell << " k=" << k;
        }
    }
}

TEST(Descent, EtaPowers) {
    for (std::int64_t ell : {5, 7, 11, 13}) {
        const auto G = eta_form(ell, ell, 30 * ell);
        const auto h = u_ell_descent(G);
        EXPECT_EQ(h.lambda, 0);
        EXPECT_EQ(h.r, 1);
        EXPECT_EQ(h.series, eta_series(PrimeField(ell), h.series.prec()));
        EXPECT_EQ(ell * (2 * h.lambda + 1), 2 * G.lambda + 1);
    }
}

TEST(Descent, ZeroFormAndBadSupport) {
    const auto z = certify(FSeries(PrimeField(5), 200, 5), 2, 5);
    const auto h = u_ell_descent(z);
    EXPECT_TRUE(h.series.is_zero());
    EXPECT_EQ(h.lambda, 0);
    EXPECT_THROW(u_ell_descent(eta_form(1, 5, 60)), etakit::invalid_argument);
}

TEST(Descent, ThetaComplementSupportedOnMultiplesOfEll) {
    for (std::int64_t ell : {5, 7, 11}) {
        const std::int64_t P = 24 * 20;
        const auto f = add_forms(theta_lift(eta_form(1, ell, P), 2),
                                 scale_form(theta_lift(eta_form(1, ell, P), 2 + (ell - 1) / 2), 3));
        const auto comp = sub(f.series, theta_op(f.series, ell - 1));
        for (auto n : comp.support()) ASSERT_EQ(n % ell, 0);
    }
}

TEST(Hecke, SingleTermInstantiation) {
    const PrimeField F(11);
    const auto f = FSeries::from_terms(F, 24 * 50, {{1, 1}}, 1);
    for (std::int64_t p : {5, 7, 13}) {
        for (std::int64_t lam : {0, 2, 4}) {
            const auto b = hecke_tp2(f, {p, lam, true, 1});
            const auto want = F.mul(F.from_int(kronecker(12, p) * kronecker(1, p)), F.pow(F.from_int(p), lam - 1));
            EXPECT_EQ(b[1], want);
            EXPECT_EQ(b.prec(), (f.prec() + p * p - 1) / (p * p));
        }
    }
    EXPECT_TRUE(hecke_tp2(FSeries(F, 500), {5, 2, true, 1}).is_zero());
}

TEST(Hecke, ExponentReducesModEllMinusOne) {
    auto g = testsupport::rng(31);
    for (std::int64_t ell : {5, 7, 11}) {
        const PrimeField F(ell);
        const auto f = testsupport::random_fseries(g, F, 2000);
        for (std::int64_t p : {13, 17, 19}) {
            if (p == ell) continue;
            for (std::int64_t lam : {2, 3, 6}) {
                ASSERT_EQ(hecke_tp2(f, {p, lam, true, 1}), hecke_tp2(f, {p, lam + ell - 1, true, 1}));
            }
        }
    }
}

TEST(Hecke, EigenvalueFormula) {
    const PrimeField F(7);
    // (12/5) = -1, ((-1)^2/5) = 1: -(5^2 + 5) = -30 = 5 mod 7.
    EXPECT_EQ(hecke_eigenvalue({5, 2, true, 1}, F), F.from_int(-30));
    EXPECT_EQ(hecke_eigenvalue({5, 2, true, -1}, F), F.from_int(30));
}

TEST(Hecke, RequiresPrimeAwayFromEll) {
    const PrimeField F(5);
    EXPECT_THROW(hecke_tp2(FSeries(F, 100), {4, 2, true, 1}), etakit::invalid_argument);
    EXPECT_THROW(hecke_tp2(FSeries(F, 100), {5, 2, true, 1}), etakit::invalid_argument);
}

TEST(BruinierOno, ThetaOfEtaIsEigenform) {
    for (std::int64_t ell : {5, 7, 11}) {
        const auto g = theta_lift(eta_form(1, ell, 24 * 37 * 37));
        for (std::int64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
            if (p % ell == 0 || p % ell == 1) continue;
            const auto v = bruinier_ono_check(g, p);
            ASSERT_TRUE(v) << "l=" << ell << " p=" << p << " witness " << v.witness.value_or(-1);
            ASSERT_GE(v.depth, 24);
        }
    }
}

TEST(BruinierOno, RejectsOutOfScopeInputs) {
    const auto g = theta_lift(eta_form(1, 5, 24 * 50));
    EXPECT_THROW(bruinier_ono_check(g, 11), etakit::invalid_argument);  // 11 = 1 mod 5
    EXPECT_THROW(bruinier_ono_check(eta_form(1, 5, 24 * 50), 7), etakit::invalid_argument);
    EXPECT_THROW(bruinier_ono_check(eta_form(5, 5, 24 * 50), 7), etakit::invalid_argument);
}

TEST(BruinierOno, ZeroFormPassesVacuously) {
    const auto z = theta_lift(certify(FSeries(PrimeField(7), 24 * 30, 1), 0, 1));
    EXPECT_TRUE(bruinier_ono_check(z, 5));
}

TEST(Shimura, MatchesOracleOnRandomSeries) {
    auto g = testsupport::rng(41);
    for (std::int64_t ell : {5, 7, 13}) {
        const PrimeField F(ell);
        for (int i = 0; i < 20; ++i) {
            const auto f = testsupport::random_fseries(g, F, 11 * 50 * 50 + 1);
            for (std::int64_t t : {1, 5, 7, 11}) {
                for (std::int64_t lam : {1, 2, 3, 6}) {
                    ASSERT_EQ(shimura_coeffs(f, t, lam, 50), testsupport::shimura_oracle(f, t, lam, 50))
                        << "l=" << ell << " t=" << t << " lambda=" << lam;
                }
            }
        }
    }
}

TEST(Shimura, DivisorSumCongruenceForThetaPowers) {
    for (std::int64_t ell : {5, 7, 11, 13}) {
        const PrimeField F(ell);
        for (std::int64_t k = 1; k <= 3; ++k) {
            const std::int64_t lam = k * (ell + 1);
            auto f = theta_lift(eta_form(1, ell, 50 * 50 + 1), k).series;
            f = scale(f, F.pow(F.from_int(24), k));
            const auto A = shimura_coeffs(f, 1, lam, 50);
            for (std::int64_t n = 1; n <= 50; ++n) {
                if (n % ell == 0) continue;
                const auto want = F.mul(F.mul(F.from_int(kronecker(12, n)), F.pow(F.from_int(n), 2 * k - 1)),
                                        F.from_int(sigma(n, 1)));
                ASSERT_EQ(A[n - 1], want) << "l=" << ell << " k=" << k << " n=" << n;
            }
        }
    }
}

TEST(Shimura, ArgumentChecks) {
    const auto f = eta_series(PrimeField(5), 100);
    EXPECT_THROW(shimura_coeffs(f, 4, 2, 3), etakit::invalid_argument);
    EXPECT_THROW(shimura_coeffs(f, 3, 2, 3), etakit::invalid_argument);
    EXPECT_THROW(shimura_coeffs(f, 1, 2, 10), insufficient_precision);
    EXPECT_NO_THROW(shimura_coeffs(f, 1, 2, 9));
}
