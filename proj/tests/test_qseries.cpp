#include <gtest/gtest.h>

#include <etakit/qseries.hpp>

#include "support.hpp"

using namespace etakit;
using testsupport::random_fseries;

namespace {

FSeries monomial(const PrimeField& F, std::int64_t n, std::int64_t prec, std::uint64_t c = 1) {
    return FSeries::from_terms(F, prec, {{n, c}});
}

}  // namespace

TEST(QExp24, MonomialProduct) {
    const PrimeField F(5);
    const auto a = monomial(F, 1, 50);
    const auto p = mul(a, a);
    EXPECT_EQ(p[2], 1u);
    EXPECT_EQ(p.support(), (std::vector<std::int64_t>{2}));
}

TEST(QExp24, ProductPrecisionRule) {
    const PrimeField F(7);
    auto g = testsupport::rng(1);
    auto f = random_fseries(g, F, 100);
    const auto h = FSeries::from_terms(F, 200, {{24, 1}, {30, 2}});
    EXPECT_GE(mul(f, h).prec(), 100 + 24);
    EXPECT_EQ(mul(f, h).prec(), std::min(f.prec() + h.valuation(), h.prec() + f.valuation()));
}

TEST(QExp24, ResidueIsEnforced) {
    const PrimeField F(5);
    EXPECT_THROW(FSeries::from_terms(F, 30, {{2, 1}}, 1), etakit::invalid_argument);
    EXPECT_NO_THROW(FSeries::from_terms(F, 30, {{25, 1}}, 1));
    EXPECT_THROW(FSeries(F, 10, 24), etakit::invalid_argument);
}

TEST(QExp24, IndexBeyondPrecisionThrows) {
    const PrimeField F(5);
    const FSeries f(F, 10);
    EXPECT_THROW(f[10], insufficient_precision);
}

TEST(QExp24, RingMismatchAcrossPrimes) {
    const FSeries a(PrimeField(5), 10), b(PrimeField(7), 10);
    EXPECT_THROW(add(a, b), ring_mismatch);
    EXPECT_THROW(mul(a, b), ring_mismatch);
}

TEST(QExp24, RingAxiomsOnRandomSeries) {
    auto g = testsupport::rng(11);
    for (std::int64_t ell : {5, 7, 13}) {
        const PrimeField F(ell);
        for (int i = 0; i < 20; ++i) {
            const auto a = random_fseries(g, F, 60), b = random_fseries(g, F, 60), c = random_fseries(g, F, 60);
            const auto P = std::int64_t{60};
            ASSERT_EQ(truncate(mul(a, b), P), truncate(mul(b, a), P));
            ASSERT_EQ(truncate(mul(mul(a, b), c), P), truncate(mul(a, mul(b, c)), P));
            ASSERT_EQ(truncate(mul(a, add(b, c)), P), truncate(add(mul(a, b), mul(a, c)), P));
        }
    }
}

TEST(Eta, LeadingCoefficients) {
    const auto eta = eta_series(Integers{}, 200);
    EXPECT_EQ(eta[1], 1);
    EXPECT_EQ(eta[25], -1);
    EXPECT_EQ(eta[49], -1);
    EXPECT_EQ(eta[121], 1);
    EXPECT_EQ(eta[2], 0);
}

TEST(Eta, MatchesProductExpansion) {
    const std::int64_t P = 24 * 40;
    const auto eta = eta_series(Integers{}, P);
    const auto prod = testsupport::euler_product(P / 24 + 1, 1);
    for (std::int64_t n = 0; n < P; ++n) {
        const BigInt want = (n % 24 == 1) ? prod[(n - 1) / 24] : BigInt(0);
        ASSERT_EQ(eta[n], want) << "index " << n;
    }
}

TEST(Eta, PowerMatchesProductExpansion) {
    const std::int64_t P = 24 * 20 + 5;
    for (int r : {1, 5, 7, 24}) {
        const auto f = eta_power(Integers{}, r, P);
        const auto prod = testsupport::euler_product(P / 24 + 2, r);
        for (std::int64_t n = 0; n < P; ++n) {
            const bool on = n >= r && (n - r) % 24 == 0;
            const BigInt want = on ? prod[(n - r) / 24] : BigInt(0);
            ASSERT_EQ(f[n], want) << "r=" << r << " index " << n;
        }
    }
}

TEST(Eta, DeltaIsEtaToThe24) {
    // tau(1..6) = 1, -24, 252, -1472, 4830, -6048
    const auto d = eta_power(Integers{}, 24, 24 * 7);
    const int tau[] = {1, -24, 252, -1472, 4830, -6048};
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(d[24 * n], tau[n - 1]);
}

TEST(Theta, EtaCoefficientMod5) {
    const PrimeField F(5);
    const auto t = theta_op(eta_series(F, 50));
    EXPECT_EQ(t[1], 4u);
    EXPECT_TRUE(theta_op(FSeries(F, 20)).is_zero());
}

TEST(Theta, LeibnizRule) {
    auto g = testsupport::rng(5);
    for (std::int64_t ell : {5, 7, 11}) {
        const PrimeField F(ell);
        for (int i = 0; i < 20; ++i) {
            const auto a = random_fseries(g, F, 80), b = random_fseries(g, F, 80);
            const auto lhs = theta_op(mul(a, b));
            const auto rhs = add(mul(theta_op(a), b), mul(a, theta_op(b)));
            ASSERT_EQ(truncate(lhs, 80), truncate(rhs, 80));
        }
    }
}

TEST(Theta, PowerEllIsTheta) {
    auto g = testsupport::rng(6);
    for (std::int64_t ell : {5, 7, 13}) {
        const PrimeField F(ell);
        for (int i = 0; i < 10; ++i) {
            const auto a = random_fseries(g, F, 120);
            ASSERT_EQ(theta_op(a, ell), theta_op(a));
        }
    }
}

TEST(Theta, ProjectorZeroesMultiplesOfEll) {
    auto g = testsupport::rng(8);
    for (std::int64_t ell : {5, 7, 11, 13}) {
        const PrimeField F(ell);
        for (int i = 0; i < 25; ++i) {
            const auto a = random_fseries(g, F, 150);
            const auto p = theta_op(a, ell - 1);
            for (std::int64_t n = 0; n < a.prec(); ++n)
                ASSERT_EQ(p[n], n % ell == 0 ? 0u : a[n]) << "l=" << ell << " n=" << n;
        }
    }
}

TEST(UV, RoundTrip) {
    auto g = testsupport::rng(9);
    const PrimeField F(7);
    for (std::int64_t m : {1, 2, 5, 7, 25}) {
        const auto a = random_fseries(g, F, 90);
        EXPECT_EQ(u_op(v_op(a, m), m), a);
        EXPECT_EQ(v_op(a, m).prec(), m * a.prec());
        EXPECT_EQ(u_op(a, m).prec(), (a.prec() + m - 1) / m);
    }
}

TEST(UV, ResidueBookkeeping) {
    const PrimeField F(5);
    const auto eta = eta_series(F, 24 * 30);
    for (std::int64_t m : {5, 7, 11, 13}) {
        const auto v = v_op(eta, m);
        ASSERT_EQ(v.residue(), static_cast<int>(m % 24));
        ASSERT_TRUE(v.supported_on_residue(static_cast<int>(m % 24)));
        ASSERT_EQ(u_op(v, m).residue(), 1);
    }
}

TEST(UV, CompressesScaledSquareSupport) {
    const PrimeField F(5);
    std::vector<std::pair<std::int64_t, std::uint64_t>> t5, t1;
    for (std::int64_t n = 1; 5 * n * n < 500; ++n) {
        t5.push_back({5 * n * n, F.from_int(kronecker(12, n))});
        t1.push_back({n * n, F.from_int(kronecker(12, n))});
    }
    const auto f = FSeries::from_terms(F, 500, t5);
    EXPECT_EQ(u_op(f, 5), FSeries::from_terms(F, 100, t1));
}

TEST(UV, EtaPowerEllDescends) {
    for (std::int64_t ell : {5, 7, 11}) {
        const PrimeField F(ell);
        const std::int64_t P = 24 * 40;
        const auto u = u_op(eta_power(F, ell, P), ell);
        EXPECT_EQ(u, eta_series(F, (P + ell - 1) / ell));
    }
}

TEST(Reduce, CommutesWithRingOps) {
    auto g = testsupport::rng(12);
    const PrimeField F(11);
    for (int i = 0; i < 20; ++i) {
        const auto a = testsupport::random_zseries(g, 50), b = testsupport::random_zseries(g, 50);
        ASSERT_EQ(reduce(add(a, b), F), add(reduce(a, F), reduce(b, F)));
        ASSERT_EQ(reduce(mul(a, b), F), mul(reduce(a, F), reduce(b, F)));
    }
}

TEST(Twist, Examples) {
    const PrimeField F(7);
    const auto q1 = monomial(F, 1, 30);
    EXPECT_EQ(twist(q1, 5, TwistKind::quadratic), q1);
    EXPECT_TRUE(twist(monomial(F, 5, 30), 5, TwistKind::trivial).is_zero());
    EXPECT_EQ(twist(monomial(F, 2, 30), 5, TwistKind::quadratic)[2], F.neg(1));
    EXPECT_THROW(twist(q1, 4, TwistKind::trivial), etakit::invalid_argument);
}

TEST(SquareClasses, Examples) {
    for (std::int64_t ell : {5, 7}) {
        const PrimeField F(ell);
        const auto one_class = support_square_classes(eta_series(F, 500));
        ASSERT_EQ(one_class.size(), 1u);
        EXPECT_EQ(one_class.begin()->first, 1);
        const auto ell_class = support_square_classes(eta_power(F, ell, 500));
        ASSERT_EQ(ell_class.size(), 1u);
        EXPECT_EQ(ell_class.begin()->first, ell);
    }
    EXPECT_TRUE(support_square_classes(FSeries(PrimeField(5), 30)).empty());
}

TEST(FirstMismatch, ReportsEarliestIndex) {
    const PrimeField F(5);
    const auto a = eta_series(F, 100);
    auto b = add(a, monomial(F, 73, 100));
    EXPECT_EQ(first_mismatch(a, b, 100), 73);
    EXPECT_FALSE(first_mismatch(a, b, 73).has_value());
    EXPECT_THROW(first_mismatch(a, b, 101), insufficient_precision);
}
