#include <gtest/gtest.h>

#include <algorithm>

#include "cmpoly/analytic.hpp"
#include "cmpoly/partition.hpp"

using namespace cmpoly;

namespace {

// p(n) by counting partitions into parts of size at most k.
BigInt partitions_by_table(int n) {
    std::vector<BigInt> ways(n + 1, BigInt(0));
    ways[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int s = part; s <= n; ++s) ways[s] += ways[s - part];
    return ways[n];
}

RatPoly poly(std::initializer_list<long> c) {
    RatPoly f;
    for (long x : c) f.c.emplace_back(x);
    return f;
}

}  // namespace

TEST(Partition, PentagonalMatchesDirectCount) {
    for (int n = 0; n <= 120; ++n) EXPECT_EQ(pentagonal_pn(n), partitions_by_table(n)) << n;
    EXPECT_EQ(pentagonal_pn(100), BigInt("190569292"));
}

TEST(Partition, SubstituteSign) {
    EXPECT_EQ(substitute_sign(poly({2, 3, 1}), -1).c, poly({2, -3, 1}).c);
    EXPECT_EQ(substitute_sign(poly({1, 1, 1, 1}), -1).c, poly({-1, 1, -1, 1}).c);
    EXPECT_EQ(substitute_sign(poly({1, 1, 1, 1}), 1).c, poly({1, 1, 1, 1}).c);
    RatPoly f = poly({5, -4, 3, 2, 1});
    EXPECT_EQ(substitute_sign(substitute_sign(f, -1), -1).c, f.c);
}

TEST(Partition, ContextRequiresOneModTwentyFour) {
    EXPECT_THROW(make_partition_context(-24), Error);
    EXPECT_THROW(make_partition_context(-7), Error);
    EXPECT_THROW(partition_poly(0), Error);
}

TEST(Partition, HeightBoundNearQuotedValue) {
    EXPECT_NEAR(bound_BP(-23), 83.25, 0.05 * 83.25);
    double prev = 0;
    for (i64 D : {-23, -47, -71, -95, -119, -143}) {
        double b = bound_BP(D);
        EXPECT_GT(b, prev) << D;
        prev = b;
    }
}

class PartitionSmallN : public ::testing::TestWithParam<u64> {};

TEST_P(PartitionSmallN, MatchesOracleAndPentagonal) {
    u64 n = GetParam();
    PartitionResult r = partition_poly(n);
    EXPECT_EQ(r.pn, pentagonal_pn(n));
    EXPECT_EQ(r.poly.c, analytic::partition_poly_oracle(n).c);
    EXPECT_EQ(r.poly.lead(), BigRat(1));
    for (auto& [D, st] : r.stats) EXPECT_LT(st.height, st.bound) << D;
}

INSTANTIATE_TEST_SUITE_P(N, PartitionSmallN, ::testing::Values(1, 2, 3, 4));

TEST(Partition, TracesAreConjugationInvariant) {
    for (i64 D : {-23, -47}) {
        PartitionContext c = make_partition_context(D);
        PrimeStream s(c.g.m, c.g.phi.disc, partition_prime);
        int checked = 0;
        for (int i = 0; i < 12 && checked < 4; ++i) {
            PrimeEntry e = s.next();
            try {
                PartitionTrace a = partition_trace_mod_p(c, e, false), b = partition_trace_mod_p(c, e, true);
                EXPECT_EQ(a.f.c, b.f.c) << D << " p=" << e.p;
                std::vector<u64> pa = a.P, pb = b.P;
                std::sort(pa.begin(), pa.end());
                std::sort(pb.begin(), pb.end());
                EXPECT_EQ(pa, pb);
                ++checked;
            } catch (const PrimeRejected&) {
            }
        }
        EXPECT_GE(checked, 3) << D;
    }
}

TEST(Partition, PrimeStreamForMinusTwentyThree) {
    PartitionContext c = make_partition_context(-23);
    PrimeStream s(c.g.m, c.g.phi.disc, partition_prime);
    std::vector<u64> got;
    for (int i = 0; i < 12; ++i) got.push_back(s.next().p);
    std::vector<u64> want{1562207, 1915763, 2638607, 2744591, 3704243, 4294607, 6454031, 6863891, 7089107, 8473523, 9732083, 10010291};
    EXPECT_EQ(got, want);
}

TEST(Partition, WorkedExampleResidues) {
    PartitionContext c = make_partition_context(-23);
    PrimeStream s(c.g.m, c.g.phi.disc, partition_prime);
    PrimeEntry e;
    do e = s.next();
    while (e.p != 1562207);
    PartitionTrace t = partition_trace_mod_p(c, e);
    std::map<u64, std::pair<u64, u64>> got;
    for (std::size_t k = 0; k < t.j.size(); ++k) got[t.j[k]] = {t.ahat[k], t.P[k]};
    std::map<u64, std::pair<u64, u64>> want{{244476, {1201792, 1352290}}, {467416, {98544, 519913}}, {482979, {239915, 1252234}}};
    EXPECT_EQ(got, want);
}

TEST(Partition, ComboPatternForMinusTwentyThree) {
    // For D = -23 the 36 combinations hit P exactly twice and never -P.
    PartitionContext c = make_partition_context(-23);
    PrimeStream s(c.g.m, c.g.phi.disc, partition_prime);
    int samples = 0;
    for (int i = 0; i < 6; ++i) {
        PrimeEntry e = s.next();
        PartitionTrace t = partition_trace_mod_p(c, e);
        BiPolyModP psiA(c.psiA, t.F), psiB(c.psiB, t.F);
        for (std::size_t k = 0; k < t.j.size(); ++k) {
            ComboPattern pat = combo36_pattern(t.F, t.j[k], t.gamma[k], psiA, psiB);
            EXPECT_EQ(pat.singles, 34);
            ASSERT_EQ(pat.doubles.size(), 1u);
            EXPECT_EQ(pat.doubles[0], t.P[k]);
            EXPECT_EQ(pat.higher, 0);
            EXPECT_THROW(combo36_check(t.F, pat, t.P[k]), PrimeRejected);
            ++samples;
        }
    }
    EXPECT_EQ(samples, 18);
}

TEST(Partition, ComboCheckAcceptsTheStatedPattern) {
    PrimeField F(1562207);
    ComboPattern pat;
    pat.singles = 32;
    pat.doubles = {5, F.neg(5)};
    std::sort(pat.doubles.begin(), pat.doubles.end());
    EXPECT_NO_THROW(combo36_check(F, pat, 5));
    EXPECT_THROW(combo36_check(F, pat, 6), PrimeRejected);
    pat.higher = 1;
    EXPECT_THROW(combo36_check(F, pat, 5), PrimeRejected);
}
