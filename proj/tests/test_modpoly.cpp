#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "cmpoly/analytic.hpp"
#include "cmpoly/modpoly.hpp"

using namespace cmpoly;

TEST(PrimeStream, NormEquationAndOrder) {
    for (u64 m : {3ull, 5ull, 7ull, 10ull, 23ull}) {
        SuitableOrder so = find_suitable_order(m);
        PrimeStream s(m, so.disc);
        std::set<u64> seen;
        for (int i = 0; i < 40; ++i) {
            PrimeEntry e = s.next();
            EXPECT_TRUE(is_prime(e.p));
            EXPECT_TRUE(seen.insert(e.p).second) << "repeated prime " << e.p;
            BigInt w = BigInt(static_cast<long>(m * e.v));
            BigInt rhs = BigInt(static_cast<long>(e.t)) * e.t - w * w * so.disc;
            EXPECT_EQ(rhs, 4 * to_big(e.p)) << "m=" << m << " p=" << e.p;
        }
    }
}

TEST(PrimeStream, AcceptFilterIsHonored) {
    PrimeStream s(5, find_suitable_order(5).disc, [](u64 p) { return p % 12 == 11; });
    for (int i = 0; i < 20; ++i) EXPECT_EQ(s.next().p % 12, 11u);
}

TEST(PrimeStream, RejectsBadArguments) {
    EXPECT_THROW(PrimeStream(1, -11), Error);
    EXPECT_THROW(PrimeStream(3, -4), Error);
}

TEST(CrtLift, RecoversSignedIntegers) {
    std::vector<BigInt> want{BigInt("-98765432109876543210987654321"), BigInt(0), BigInt(17), BigInt("123456789123456789123456789")};
    PrimeStream s(7, find_suitable_order(7).disc);
    LiftStats st;
    double bound = 0;
    for (auto& x : want) bound = std::max(bound, log_abs(x));
    auto got = crt_lift(s, bound, [&](const PrimeEntry& e) {
        std::vector<u64> r;
        for (auto& x : want) r.push_back(mod_of(x, e.p));
        return r;
    }, st);
    EXPECT_EQ(got, want);
    EXPECT_NE(st.check_prime, 0u);
    double logprod = 0;
    for (u64 p : st.used) logprod += std::log(static_cast<double>(p));
    EXPECT_GT(logprod, bound + std::log(2.0));
}

TEST(CrtLift, SkipsRejectedPrimes) {
    PrimeStream s(7, find_suitable_order(7).disc);
    LiftStats st;
    int calls = 0;
    auto got = crt_lift(s, 60, [&](const PrimeEntry& e) {
        if (++calls % 3 == 0) throw PrimeRejected("every third");
        return std::vector<u64>{mod_of(BigInt(-5), e.p)};
    }, st);
    EXPECT_EQ(got.front(), BigInt(-5));
    EXPECT_FALSE(st.rejected.empty());
}

TEST(CrtLift, ExhaustionIsReported) {
    PrimeStream s(7, find_suitable_order(7).disc);
    LiftStats st;
    try {
        crt_lift(s, 60, [](const PrimeEntry&) -> std::vector<u64> { throw PrimeRejected("never"); }, st);
        FAIL() << "expected an exception";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PrimePoolExhausted);
    }
}

TEST(CrtLift, CheckPrimeCatchesLowBound) {
    PrimeStream s(7, find_suitable_order(7).disc);
    LiftStats st;
    BigInt big("1000000000000000000000000000000000000000000000000000000000000");
    try {
        crt_lift(s, 10, [&](const PrimeEntry& e) { return std::vector<u64>{mod_of(big, e.p)}; }, st);
        FAIL() << "expected an exception";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::RoundingFailure);
    }
}

TEST(ModPoly, PhiTwoCoefficients) {
    BiPoly P = phi2();
    EXPECT_EQ(P.at(3, 0), BigInt(1));
    EXPECT_EQ(P.at(1, 1), BigInt(40773375));
    EXPECT_EQ(P.at(1, 0), BigInt(8748000000));
    EXPECT_EQ(P.at(2, 1), BigInt(1488));
    EXPECT_EQ(P.at(2, 2), BigInt(-1));
    EXPECT_EQ(P.at(0, 0), BigInt("-157464000000000"));
    EXPECT_TRUE(P.symmetric());
}

class PhiSmallLevels : public ::testing::TestWithParam<u64> {};

TEST_P(PhiSmallLevels, LiftMatchesAnalyticOracle) {
    u64 m = GetParam();
    LiftStats st;
    BiPoly lifted = phi_lift(m, &st);
    BiPoly oracle = analytic::phi_analytic_oracle(m);
    EXPECT_EQ(lifted.c, oracle.c);
    EXPECT_TRUE(lifted.symmetric());
    EXPECT_EQ(lifted.degree_x(), static_cast<int>(psi(m)));
    EXPECT_LT(lifted.height(), height_bound_phi(m));
}

TEST_P(PhiSmallLevels, EveryPrimeAgreesWithOracle) {
    u64 m = GetParam();
    BiPoly oracle = analytic::phi_analytic_oracle(m);
    PhiContext ctx = make_phi_context(m);
    PrimeStream s(m, ctx.disc);
    int checked = 0;
    for (int i = 0; i < 12; ++i) {
        PrimeEntry e = s.next();
        try {
            BiPolyModP got = phi_mod_p(ctx, e);
            BiPolyModP want(oracle, got.F);
            EXPECT_EQ(got.c, want.c) << "m=" << m << " p=" << e.p;
            ++checked;
        } catch (const PrimeRejected&) {
        }
    }
    EXPECT_GE(checked, 6);
}

INSTANTIATE_TEST_SUITE_P(Levels, PhiSmallLevels, ::testing::Values(3, 4, 5, 6, 7, 9, 11));
