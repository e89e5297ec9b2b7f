#include <gtest/gtest.h>

#include <sstream>

#include "cmpoly/analytic.hpp"
#include "cmpoly/gammapoly.hpp"

using namespace cmpoly;

namespace {

constexpr mpfr_prec_t kPrec = 400;

// Coefficients of prod (x - g(tau_Q)) over the reduced forms, evaluated numerically.
std::vector<mp::Complex> analytic_class_poly(analytic::Fn g, i64 D) {
    std::vector<mp::Complex> vals;
    for (const QuadForm& f : primitive_reduced_forms(D)) vals.push_back(analytic::eval(g, analytic::heegner_point(f, kPrec)));
    return analytic::poly_from_roots(vals, kPrec);
}

void expect_close(const RatPoly& got, const std::vector<mp::Complex>& want, const std::string& what) {
    ASSERT_EQ(got.c.size(), want.size()) << what;
    for (std::size_t k = 0; k < want.size(); ++k) {
        mp::Real exact(got.c[k], kPrec);
        mp::Real scale = mp::abs(exact);
        if (scale.is_zero()) scale = mp::Real(1L, kPrec);
        mp::Real err = (mp::abs(want[k].re - exact) + mp::abs(want[k].im)) / scale;
        EXPECT_TRUE(err.is_zero() || err.exponent() < -200) << what << " coefficient " << k << " = " << to_string(got.c[k]);
    }
}

PrimeEntry entry_for(u64 m, i64 disc, u64 p) {
    PrimeStream s(m, disc);
    for (int i = 0; i < 10000; ++i) {
        PrimeEntry e = s.next();
        if (e.p == p) return e;
    }
    throw std::runtime_error("prime not in stream");
}

}  // namespace

TEST(Gamma, MasserLevel) {
    EXPECT_EQ(masser_level(-23), 23u);
    EXPECT_EQ(masser_level(-20), 5u);
    EXPECT_EQ(masser_level(-7), 7u);
    EXPECT_THROW(masser_level(-4), Error);
    EXPECT_THROW(masser_level(-6), Error);
}

TEST(Gamma, SpecialDiscriminantsAreRefused) {
    for (i64 D : {-12, -27, -48, -75}) {
        try {
            class_poly_gamma(D);
            FAIL() << D;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::SpecialDiscriminant) << D;
        }
    }
}

TEST(Gamma, ValueIsInvariantUnderScalingPhi) {
    PrimeField F(1000003);
    BiPolyModP Phi(phi2(), F);
    u64 j = F.from(BigInt(8000));
    BetaTriple b = masser_betas(Phi, j);
    u64 g = gamma_mod_p(F, b);
    for (u64 c : {2ull, 7ull, 999983ull}) {
        BetaTriple s{F.mul(b.b01, c), F.mul(b.b11, c), F.mul(b.b02, c)};
        EXPECT_EQ(gamma_mod_p(F, s), g);
    }
    EXPECT_THROW(gamma_mod_p(F, BetaTriple{0, 1, 1}), PrimeRejected);
}

TEST(Gamma, WorkedExampleValues) {
    GammaContext g = make_gamma_context(-23);
    GammaValues gv = gamma_values_mod_p(g, entry_for(g.m, g.phi.disc, 1562207));
    std::map<u64, u64> got;
    for (std::size_t k = 0; k < gv.j.size(); ++k) got[gv.j[k]] = gv.gamma[k];
    std::map<u64, u64> want{{244476, 1461486}, {467416, 587848}, {482979, 220836}};
    EXPECT_EQ(got, want);
}

class GammaAgainstAnalytic : public ::testing::TestWithParam<i64> {};

TEST_P(GammaAgainstAnalytic, ClassPolynomial) {
    i64 D = GetParam();
    RatPoly got = class_poly_gamma(D);
    EXPECT_EQ(got.degree(), class_number(D));
    expect_close(got, analytic_class_poly(analytic::Fn::Gamma, D), "gamma D=" + std::to_string(D));
}

TEST_P(GammaAgainstAnalytic, ZagierK) {
    i64 D = GetParam();
    RatPoly got = class_poly_good(zagier_K_spec(), D);
    expect_close(got, analytic_class_poly(analytic::Fn::K, D), "K D=" + std::to_string(D));
}

INSTANTIATE_TEST_SUITE_P(Discriminants, GammaAgainstAnalytic, ::testing::Values(-7, -8, -11, -15, -19, -20, -23, -31));

TEST(GoodSpec, RoundTrip) {
    GoodFunctionSpec s = zagier_K_spec();
    s.c1 = 6;
    s.c2 = 2;
    std::stringstream ss;
    write_good_spec(ss, s);
    GoodFunctionSpec r = read_good_spec(ss);
    ASSERT_EQ(r.terms.size(), s.terms.size());
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
        EXPECT_EQ(r.terms[i].n, s.terms[i].n);
        EXPECT_EQ(r.terms[i].num, s.terms[i].num);
        EXPECT_EQ(r.terms[i].den, s.terms[i].den);
    }
    EXPECT_EQ(r.c1, s.c1);
    EXPECT_EQ(r.c2, s.c2);
}

TEST(GoodSpec, CommentsAndBlankLines) {
    std::istringstream in("# K\n\nA 1: num=0,-1728,1   # j(j-1728)\nA 0: num=-1728,2\nc1=1 c2=1\n");
    GoodFunctionSpec s = read_good_spec(in);
    EXPECT_EQ(s.terms.size(), 2u);
    EXPECT_EQ(s.terms[0].den, std::vector<BigInt>{1});
}

TEST(GoodSpec, MalformedInputIsRejected) {
    for (const char* text : {"", "A 1 num=1\n", "A 1: num=1 foo=2\n", "A 0: num=1 den=0\n", "A -1: num=1\n", "A 0: num=1\nc1=0\n",
                             "A 0: num=1\nbogus\n"}) {
        std::istringstream in(text);
        try {
            read_good_spec(in);
            FAIL() << "accepted: " << text;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::BadInput) << text;
        }
    }
}

TEST(Gamma, ResultDoesNotDependOnThreadCount) {
    unsigned saved = settings().jobs;
    settings().jobs = 1;
    LiftStats a, b;
    RatPoly one = class_poly_gamma(-23, &a);
    settings().jobs = 4;
    RatPoly four = class_poly_gamma(-23, &b);
    settings().jobs = saved;
    EXPECT_EQ(one.c, four.c);
    EXPECT_EQ(a.used, b.used);
    EXPECT_EQ(a.check_prime, b.check_prime);
}
