#include <gtest/gtest.h>

#include <random>

#include "cmpoly/ecfp.hpp"
#include "cmpoly/fppoly.hpp"

using namespace cmpoly;

namespace {

FpPoly random_poly(const PrimeField& F, int deg, std::mt19937_64& rng) {
    std::vector<u64> c(deg + 1);
    for (auto& v : c) v = rng() % F.modulus();
    if (c.back() == 0) c.back() = 1;
    return FpPoly(F, c);
}

}  // namespace

TEST(PrimeField, MulMatchesWideArithmetic) {
    std::mt19937_64 rng(11);
    for (u64 p : {1562207ull, 1000000007ull, 4611686018427387847ull, 2305843009213693951ull}) {
        PrimeField F(p);
        for (int i = 0; i < 20000; ++i) {
            u64 a = rng() % p, b = rng() % p;
            ASSERT_EQ(F.mul(a, b), mulmod(a, b, p));
        }
        EXPECT_EQ(F.mul(p - 1, p - 1), 1u);
    }
}

TEST(FpPoly, DivisionIdentity) {
    std::mt19937_64 rng(5);
    PrimeField F(1000003);
    for (int t = 0; t < 50; ++t) {
        FpPoly a = random_poly(F, 1 + rng() % 120, rng);
        FpPoly b = random_poly(F, 1 + rng() % 80, rng);
        auto [q, r] = divrem(a, b);
        EXPECT_LT(r.degree(), b.degree());
        EXPECT_EQ(q * b + r, a);
    }
}

TEST(FpPoly, KaratsubaMatchesSchoolbook) {
    std::mt19937_64 rng(9);
    PrimeField F(4294967311ull);
    for (int t = 0; t < 10; ++t) {
        FpPoly a = random_poly(F, 50 + rng() % 300, rng);
        FpPoly b = random_poly(F, 50 + rng() % 300, rng);
        FpPoly c = a * b;
        std::vector<u64> ref(a.c.size() + b.c.size() - 1, 0);
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) ref[i + j] = F.add(ref[i + j], F.mul(a.c[i], b.c[j]));
        EXPECT_EQ(c, FpPoly(F, ref));
    }
}

TEST(FpPoly, GcdDividesBoth) {
    std::mt19937_64 rng(21);
    PrimeField F(10007);
    for (int t = 0; t < 30; ++t) {
        FpPoly c = random_poly(F, 1 + rng() % 10, rng);
        FpPoly a = c * random_poly(F, rng() % 20, rng);
        FpPoly b = c * random_poly(F, rng() % 20, rng);
        FpPoly g = gcd(a, b);
        EXPECT_TRUE((a % g).is_zero());
        EXPECT_TRUE((b % g).is_zero());
        EXPECT_TRUE((g % monic(c)).is_zero());
    }
}

TEST(FpPoly, RootsOfSplitProducts) {
    std::mt19937_64 rng(1);
    PrimeField F(1562207);
    for (int t = 0; t < 30; ++t) {
        std::vector<u64> rs;
        int n = 1 + rng() % 40;
        for (int i = 0; i < n; ++i) rs.push_back(rng() % F.modulus());
        if (t % 3 == 0) rs.push_back(rs[0]);
        if (t % 5 == 0) rs.push_back(0);
        FpPoly f = from_roots(F, rs) * FpPoly(F, {1, 0, 1, 1});  // add a cubic factor
        std::sort(rs.begin(), rs.end());
        std::vector<u64> got = roots_split(f);
        auto extra = roots_split(FpPoly(F, {1, 0, 1, 1}));
        std::vector<u64> want = rs;
        want.insert(want.end(), extra.begin(), extra.end());
        std::sort(want.begin(), want.end());
        EXPECT_EQ(got, want);
    }
}

TEST(FpPoly, IrreducibleHasNoRoots) {
    PrimeField F(7);
    EXPECT_TRUE(roots(FpPoly(F, {1, 0, 1})).empty() == (sqrt_mod(6, 7) == std::nullopt));
    PrimeField G(1562207);
    // x^2 + 1 has roots iff p = 1 mod 4; 1562207 = 3 mod 4
    EXPECT_TRUE(roots(FpPoly(G, {1, 0, 1})).empty());
}

TEST(FpPoly, TaylorShift) {
    std::mt19937_64 rng(4);
    PrimeField F(1000003);
    for (int t = 0; t < 20; ++t) {
        FpPoly f = random_poly(F, rng() % 60, rng);
        u64 s = rng() % F.modulus();
        FpPoly g = taylor_shift(f, s);
        for (int k = 0; k < 5; ++k) {
            u64 y = rng() % F.modulus();
            EXPECT_EQ(g(y), f(F.add(y, s)));
        }
    }
}

TEST(FpPoly, InterpolationRoundTrip) {
    std::mt19937_64 rng(8);
    PrimeField F(2744591);
    for (int t = 0; t < 10; ++t) {
        int n = 1 + rng() % 80;
        FpPoly f = random_poly(F, n - 1, rng);
        std::vector<u64> xs;
        while (static_cast<int>(xs.size()) < n) {
            u64 x = rng() % F.modulus();
            if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
        }
        Interpolator I(F, xs);
        EXPECT_EQ(I.interpolate(multipoint_eval(f, xs)), f);
        u64 z = rng() % F.modulus();
        auto e = I.prepare(z);
        std::vector<u64> table = multipoint_eval(f, xs);
        auto [v, d] = I.eval(e, table, 1, 0);
        EXPECT_EQ(v, f(z));
        EXPECT_EQ(d, derivative(f)(z));
    }
}

TEST(Curves, JInvariantRoundTrip) {
    PrimeField F(1562207);
    for (u64 j : {5ull, 244476ull, 467416ull, 482979ull, 1000000ull}) {
        Curve E = curve_from_j(F, j);
        EXPECT_EQ(j_invariant(E), j);
        EXPECT_EQ(j_invariant(twist(E)), j);
    }
}

TEST(Curves, OrderMatchesNaiveCount) {
    std::mt19937_64 rng(12);
    for (u64 p : {1009ull, 1999ull}) {
        PrimeField F(p);
        for (int t = 0; t < 10; ++t) {
            Curve E{F, rng() % p, rng() % p};
            if (discriminant_part(E) == 0) continue;
            u64 n = curve_order(E);
            u64 nt = curve_order(twist(E));
            EXPECT_EQ(n + nt, 2 * p + 2);
        }
    }
    PrimeField G(1562207);
    for (int t = 0; t < 5; ++t) {
        Curve E{G, rng() % G.modulus(), rng() % G.modulus()};
        u64 n = curve_order(E);
        Point P = random_point(E, rng);
        EXPECT_TRUE(mul(E, n, P).inf);
        EXPECT_EQ(n + curve_order(twist(E)), 2 * G.modulus() + 2);
    }
}

TEST(Curves, KernelCountMatchesBruteForce) {
    // count rational subgroups of order l by enumerating the group
    std::mt19937_64 rng(2);
    for (u64 p : {101ull, 103ull, 107ull, 109ull, 113ull}) {
        PrimeField F(p);
        for (int t = 0; t < 6; ++t) {
            Curve E{F, rng() % p, rng() % p};
            if (discriminant_part(E) == 0) continue;
            std::vector<Point> pts{Point::infinity()};
            for (u64 x = 0; x < p; ++x) {
                u64 r = rhs(E, x);
                for (u64 y = 0; y < p; ++y)
                    if (F.mul(y, y) == r) pts.push_back(Point::affine(x, y));
            }
            for (u64 ell : {3ull, 5ull, 7ull}) {
                std::set<std::vector<u64>> subs;
                for (const Point& P : pts) {
                    if (P.inf || !mul(E, ell, P).inf) continue;
                    std::vector<u64> xs;
                    Point Q = P;
                    for (u64 k = 1; k < ell; ++k) {
                        xs.push_back(Q.x);
                        Q = add(E, Q, P);
                    }
                    std::sort(xs.begin(), xs.end());
                    subs.insert(xs);
                }
                auto ks = ell_kernels(E, ell);
                std::size_t rational = 0;
                for (auto& K : ks) {
                    if (roots(K.poly).size() == (ell - 1) / 2) {
                        bool all_rational_y = true;
                        for (u64 x : roots(K.poly)) all_rational_y &= sqrt_mod(rhs(E, x), p).has_value();
                        if (all_rational_y) ++rational;
                    }
                }
                EXPECT_EQ(rational, subs.size()) << p << " l=" << ell;
            }
        }
    }
}
