#include <gtest/gtest.h>

#include "cmpoly/analytic.hpp"
#include "cmpoly/modpoly.hpp"
#include "cmpoly/store.hpp"

using namespace cmpoly;
using namespace cmpoly::analytic;

namespace {

constexpr mpfr_prec_t kPrec = 256;

BigInt rounded_j(const Complex& z) {
    Complex v = eval_j(z);
    BigInt r;
    EXPECT_TRUE(near_integer(v.re, r, 100));
    EXPECT_LT(v.im.exponent(), -100);
    return r;
}

std::vector<BigInt> ints(std::initializer_list<const char*> xs) {
    std::vector<BigInt> out;
    for (const char* x : xs) out.emplace_back(x);
    return out;
}

}  // namespace

TEST(Analytic, SingularModuliOfClassNumberOne) {
    const std::vector<std::pair<i64, const char*>> cases{
        {-3, "0"}, {-4, "1728"}, {-7, "-3375"}, {-8, "8000"}, {-11, "-32768"}, {-19, "-884736"}, {-163, "-262537412640768000"}};
    for (auto& [D, j] : cases) {
        QuadForm f = primitive_reduced_forms(D).front();
        EXPECT_EQ(rounded_j(heegner_point(f, kPrec)), BigInt(j)) << D;
    }
}

TEST(Analytic, JIsModularUnderReduction) {
    Complex z(Real(0.31, kPrec), Real(0.97, kPrec));
    Complex a = eval_j(z);
    Complex w = Complex(Real(-1L, kPrec), Real(0L, kPrec)) / z;
    Complex b = eval_j(w);
    Real err = mp::abs(a.re - b.re) + mp::abs(a.im - b.im);
    EXPECT_LT(err.exponent(), -150);
}

TEST(Analytic, HilbertMinusTwentyThree) {
    RatPoly H = hilbert_analytic(-23);
    std::vector<BigRat> want{BigRat(BigInt("12771880859375")), BigRat(BigInt("-5151296875")), BigRat(BigInt(3491750)), BigRat(1)};
    EXPECT_EQ(H.c, want);
}

TEST(Analytic, HilbertDegreesAndIntegrality) {
    for (i64 D : {-15, -20, -39, -56, -71, -84, -95, -104}) {
        RatPoly H = hilbert_analytic(D);
        EXPECT_EQ(H.degree(), class_number(D)) << D;
        EXPECT_TRUE(H.is_integral()) << D;
        EXPECT_EQ(H.lead(), BigRat(1)) << D;
        EXPECT_LT(H.height(), bound_Bj(D)) << D;
    }
}

TEST(Analytic, BoundBjNearQuotedValue) {
    EXPECT_NEAR(bound_Bj(-23), 31.65, 0.05 * 31.65);
}

TEST(Analytic, PhiOracleTwo) {
    BiPoly P = phi_analytic_oracle(2);
    EXPECT_EQ(P.c, phi2().c);
}

TEST(Analytic, PsiDegrees) {
    BiPoly A = store::psi(Fn::AHat), B = store::psi(Fn::B);
    EXPECT_EQ(A.degree_x(), 12);
    EXPECT_EQ(A.degree_y(), 28);
    EXPECT_EQ(B.degree_x(), 12);
    EXPECT_EQ(B.degree_y(), 16);
    EXPECT_EQ(A.at(12, 0), BigInt(1));
    EXPECT_EQ(B.at(12, 0), BigInt(1));
}

TEST(Analytic, PsiVanishesAtHeegnerValues) {
    BiPoly A = store::psi(Fn::AHat);
    for (auto& r : heegner_reps_level6(-47)) {
        Complex z = heegner_point(r.form, 512);
        Complex j = eval_j(z);
        Complex x = eval_AB(z).first;
        Complex acc(512), jp(1, 512);
        Real scale(0L, 512);
        for (int b = 0; b <= A.dy; ++b) {
            Complex xp(1, 512);
            for (int a = 0; a <= A.dx; ++a) {
                if (A.at(a, b) != 0) {
                    Complex term = xp * jp * Complex(Real(A.at(a, b), 512), Real(0L, 512));
                    acc = acc + term;
                    Real mag = mp::abs(term.re) + mp::abs(term.im);
                    if (mag > scale) scale = mag;
                }
                xp = xp * x;
            }
            jp = jp * j;
        }
        Real size = (mp::abs(acc.re) + mp::abs(acc.im)) / scale;
        EXPECT_TRUE(size.is_zero() || size.exponent() < -300);
    }
}

TEST(Analytic, KFieldClassPolynomialsMinusTwentyThree) {
    KQuadPoly A = store::kfield(Fn::AHat, -23);
    EXPECT_EQ(A.u, ints({"-31056014444792221417574181765625", "2475457400005251007500", "-76898070951625", "2"}));
    EXPECT_EQ(A.v, ints({"-14048754886813637262794029921875", "9733191440719870392500", "264101659831625", "0"}));
    KQuadPoly B = store::kfield(Fn::B, -23);
    EXPECT_EQ(B.u, ints({"2863927430863296875", "-75216787366875", "-70974750", "2"}));
    EXPECT_EQ(B.v, ints({"842331597312734375", "6837889760625", "-70974750", "0"}));
}

TEST(Analytic, PartitionOracleSmallN) {
    for (u64 n = 1; n <= 6; ++n) {
        RatPoly f = partition_poly_oracle(n);
        BigRat tr = f.trace() / BigRat(24 * static_cast<long>(n) - 1);
        ASSERT_EQ(tr.get_den(), 1) << n;
        const long pn[] = {0, 1, 2, 3, 5, 7, 11};
        EXPECT_EQ(tr.get_num(), BigInt(pn[n])) << n;
    }
}
