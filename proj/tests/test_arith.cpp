#include <gtest/gtest.h>

#include <random>

#include "cmpoly/arith.hpp"
#include "cmpoly/qforms.hpp"

using namespace cmpoly;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

}  // namespace

TEST(Arith, PrimalityMatchesTrialDivision) {
    for (u64 n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(n), trial_prime(n)) << n;
    EXPECT_TRUE(is_prime(u64(1562207)));
    EXPECT_FALSE(is_prime(u64(3215031751)));  // strong pseudoprime to 2, 3, 5, 7
    EXPECT_TRUE(is_prime(u64(18446744073709551557ULL)));
}

TEST(Arith, BigPrimality) {
    BigInt m127 = ipow(BigInt(2), 127) - 1;
    EXPECT_TRUE(is_prime(m127));
    EXPECT_FALSE(is_prime(BigInt(m127 * 3)));
    EXPECT_FALSE(is_prime(BigInt(m127 * (ipow(BigInt(2), 61) - 1))));
}

TEST(Arith, SqrtMod) {
    std::mt19937_64 rng(1);
    for (u64 p : {3ul, 5ul, 13ul, 17ul, 97ul, 1562207ul, 998244353ul, 4611686018427387847ul}) {
        if (!is_prime(p)) continue;
        for (int i = 0; i < 50; ++i) {
            u64 x = rng() % p;
            u64 a = mulmod(x, x, p);
            auto r = sqrt_mod(a, p);
            ASSERT_TRUE(r.has_value());
            EXPECT_EQ(mulmod(*r, *r, p), a);
        }
    }
    EXPECT_FALSE(sqrt_mod(2, 5).has_value());
    // sqrt(-23) mod 1562207 exists because the prime splits in Q(sqrt(-23))
    auto r = sqrt_mod(1562207 - 23, 1562207);
    ASSERT_TRUE(r.has_value());
}

TEST(Arith, CrtBalanced) {
    std::vector<u64> ps{1562207, 2744591, 4294607};
    BigInt x("-123456789012345678");
    ResidueSystem rs;
    for (u64 p : ps) rs.add(p, mod_of(x, p));
    EXPECT_EQ(crt_reconstruct(rs), x);
    EXPECT_THROW(rs.add(1562207, 1), std::invalid_argument);
}

TEST(Arith, CrtIsOrderIndependentAndAssociative) {
    std::mt19937_64 rng(7);
    std::vector<u64> ps{101, 103, 107, 109, 113, 127};
    BigInt M = 1;
    for (u64 p : ps) M *= to_big(p);
    for (int t = 0; t < 100; ++t) {
        BigInt x = to_big(static_cast<u64>(rng() % 1000000000000ULL));
        x = x % M - M / 2;
        std::vector<u64> rv;
        for (u64 p : ps) rv.push_back(mod_of(x, p));
        BigInt a = CrtBasis(ps).reconstruct(rv);
        std::vector<u64> ps2(ps.rbegin(), ps.rend()), rv2(rv.rbegin(), rv.rend());
        EXPECT_EQ(a, CrtBasis(ps2).reconstruct(rv2));
        // merge two halves
        BigInt lo = CrtBasis({ps.begin(), ps.begin() + 3}).reconstruct({rv.begin(), rv.begin() + 3});
        BigInt hi = CrtBasis({ps.begin() + 3, ps.end()}).reconstruct({rv.begin() + 3, rv.end()});
        BigInt m1 = to_big(u64(101 * 103 * 107)), m2 = to_big(u64(109 * 113 * 127));
        ResidueSystem big;
        BigInt merged = balanced(lo + m1 * ((hi - lo) * [&] {
                                      BigInt inv;
                                      mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
                                      return inv;
                                  }()), m1 * m2);
        EXPECT_EQ(a, merged);
    }
}

TEST(QForms, ReducedFormsAndClassNumbers) {
    EXPECT_EQ(class_number(-23), 3);
    EXPECT_EQ(class_number(-71), 7);
    EXPECT_EQ(class_number(-4), 1);
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-15), 2);
    EXPECT_EQ(class_number(-20), 2);
    EXPECT_EQ(class_number(-16), 1);
    EXPECT_EQ(class_number(-47), 5);
    EXPECT_EQ(class_number(-95), 8);
    EXPECT_EQ(class_number(-575), 18);
    auto f = primitive_reduced_forms(-23);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0], (QuadForm{1, 1, 6}));
    EXPECT_EQ(f[1], (QuadForm{2, -1, 3}));
    EXPECT_EQ(f[2], (QuadForm{2, 1, 3}));
}

TEST(QForms, ReduceIsIdempotentAndPreservesDisc) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 2000; ++t) {
        i64 a = 1 + rng() % 50, b = static_cast<i64>(rng() % 201) - 100;
        i64 c = 1 + rng() % 50;
        if (b * b - 4 * a * c >= 0) continue;
        QuadForm g{a, b, c};
        QuadForm r = reduce_form(g);
        EXPECT_EQ(r.disc(), g.disc());
        EXPECT_EQ(reduce_form(r), r);
        EXPECT_LE(std::abs(r.b), r.a);
        EXPECT_LE(r.a, r.c);
    }
}

TEST(QForms, HurwitzClassNumber) {
    EXPECT_EQ(hurwitz_class_number(-575), BigRat(21));
    EXPECT_EQ(hurwitz_class_number(-23), BigRat(3));
    EXPECT_EQ(hurwitz_class_number(-12), BigRat(4, 3));
    EXPECT_EQ(hurwitz_class_number(-16), BigRat(3, 2));
}

TEST(QForms, HeegnerRepsLevelSix) {
    for (i64 D : {-23, -47, -71, -95, -119, -143, -167, -191, -215, -239, -575}) {
        auto reps = heegner_reps_level6(D);
        EXPECT_EQ(static_cast<int>(reps.size()), class_number(D)) << D;
        for (auto& r : reps) {
            EXPECT_EQ(r.form.a % 6, 0);
            EXPECT_EQ(((r.form.b % 12) + 12) % 12, 1);
            EXPECT_EQ(r.form.disc(), D);
            EXPECT_EQ(reduce_form(r.form), r.reduced);
        }
    }
    auto all = heegner_reps_level6(-575, false);
    EXPECT_EQ(all.size(), 21u);
    EXPECT_THROW(heegner_reps_level6(-20), Error);
}

TEST(QForms, FundamentalDecomposition) {
    auto d = fundamental_decomposition(-575);
    EXPECT_EQ(d.fundamental, -23);
    EXPECT_EQ(d.conductor, 5);
    d = fundamental_decomposition(-16);
    EXPECT_EQ(d.fundamental, -4);
    EXPECT_EQ(d.conductor, 2);
    d = fundamental_decomposition(-20);
    EXPECT_EQ(d.fundamental, -20);
    EXPECT_EQ(d.conductor, 1);
    EXPECT_TRUE(is_special_discriminant(-3));
    EXPECT_TRUE(is_special_discriminant(-12));
    EXPECT_TRUE(is_special_discriminant(-27));
    EXPECT_FALSE(is_special_discriminant(-23));
}

TEST(QForms, SuitableOrders) {
    EXPECT_EQ(psi(23), 24u);
    EXPECT_EQ(psi(575), 720u);
    EXPECT_EQ(psi(4), 6u);
    auto o = find_suitable_order(23, -23);
    EXPECT_EQ(o.disc, -2783);
    EXPECT_EQ(o.class_number, 36);
    auto o16 = find_suitable_order(16, -16);
    EXPECT_EQ(o16.disc % 16, 0);
    EXPECT_GE(o16.class_number, 25);
    for (u64 m : {3u, 4u, 5u, 6u, 8u, 12u, 23u}) {
        auto g = find_suitable_order(m);
        EXPECT_GE(g.class_number, static_cast<int>(psi(m)) + 1);
        EXPECT_LE(g.class_number, 3 * static_cast<int>(psi(m)));
    }
}
