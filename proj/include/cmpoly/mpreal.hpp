#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "cmpoly/arith.hpp"

namespace cmpoly::mp {

/// Owning MPFR value.  Binary operations produce a result at the smaller of
/// the operand precisions.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(long x, mpfr_prec_t prec) : Real(prec) { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x, mpfr_prec_t prec) : Real(static_cast<long>(x), prec) {}
    Real(double x, mpfr_prec_t prec) : Real(prec) { mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const BigInt& x, mpfr_prec_t prec) : Real(prec) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const BigRat& x, mpfr_prec_t prec) : Real(prec) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    // log2 of |x| (rough); very negative for zero.
    long exponent() const { return mpfr_zero_p(v_) ? -(1L << 40) : mpfr_get_exp(v_); }

    BigInt round() const {
        BigInt r;
        mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDN);
        return r;
    }
    std::string str(int digits = 20) const {
        char buf[256];
        mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, v_);
        return buf;
    }

    Real& operator+=(const Real& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator-=(const Real& o) {
        mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator*=(const Real& o) {
        mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Real& operator/=(const Real& o) {
        mpfr_div(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }

private:
    mpfr_t v_;
};

inline mpfr_prec_t min_prec(const Real& a, const Real& b) { return std::min(a.prec(), b.prec()); }

#define CMPOLY_REAL_BINOP(op, fn)                                  \
    inline Real operator op(const Real& a, const Real& b) {        \
        Real r(min_prec(a, b));                                    \
        fn(r.get(), a.get(), b.get(), MPFR_RNDN);                  \
        return r;                                                  \
    }                                                              \
    inline Real operator op(const Real& a, long b) {               \
        Real r(a.prec());                                          \
        fn##_si(r.get(), a.get(), b, MPFR_RNDN);                   \
        return r;                                                  \
    }

CMPOLY_REAL_BINOP(+, mpfr_add)
CMPOLY_REAL_BINOP(-, mpfr_sub)
CMPOLY_REAL_BINOP(*, mpfr_mul)
CMPOLY_REAL_BINOP(/, mpfr_div)
#undef CMPOLY_REAL_BINOP

inline Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator+(long a, const Real& b) { return b + a; }
inline Real operator-(long a, const Real& b) { return -(b - a); }
inline Real operator/(long a, const Real& b) {
    Real r(b.prec());
    mpfr_si_div(r.get(), a, b.get(), MPFR_RNDN);
    return r;
}
inline Real operator*(const Real& a, const BigInt& b) {
    Real r(a.prec());
    mpfr_mul_z(r.get(), a.get(), b.get_mpz_t(), MPFR_RNDN);
    return r;
}

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
inline bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) < 0; }
inline bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.get(), b) > 0; }

#define CMPOLY_REAL_FN(name, fn)                  \
    inline Real name(const Real& a) {             \
        Real r(a.prec());                         \
        fn(r.get(), a.get(), MPFR_RNDN);          \
        return r;                                 \
    }
CMPOLY_REAL_FN(abs, mpfr_abs)
CMPOLY_REAL_FN(sqrt, mpfr_sqrt)
CMPOLY_REAL_FN(exp, mpfr_exp)
CMPOLY_REAL_FN(log, mpfr_log)
CMPOLY_REAL_FN(sin, mpfr_sin)
CMPOLY_REAL_FN(cos, mpfr_cos)
#undef CMPOLY_REAL_FN

inline Real round_nearest(const Real& a) {
    Real r(a.prec());
    mpfr_rint(r.get(), a.get(), MPFR_RNDN);
    return r;
}

inline Real atan2(const Real& y, const Real& x) {
    Real r(min_prec(x, y));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

inline Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

inline Real ldexp(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
    return r;
}

inline void sincos(const Real& a, Real& s, Real& c) { mpfr_sin_cos(s.get(), c.get(), a.get(), MPFR_RNDN); }

/// Complex number as a pair of Reals.
struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(r), im(r.prec()) {}
    Complex(long r, mpfr_prec_t prec) : re(r, prec), im(prec) {}

    mpfr_prec_t prec() const { return min_prec(re, im); }
    long exponent() const { return std::max(re.exponent(), im.exponent()); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
};

inline Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
inline Complex operator*(const Real& b, const Complex& a) { return a * b; }
inline Complex operator*(const Complex& a, long b) { return {a.re * b, a.im * b}; }
inline Complex operator*(long b, const Complex& a) { return a * b; }
inline Complex operator*(const Complex& a, const BigInt& b) { return {a.re * b, a.im * b}; }
inline Complex operator+(const Complex& a, long b) { return {a.re + b, a.im}; }
inline Complex operator-(const Complex& a, long b) { return {a.re - b, a.im}; }
inline Complex operator+(const Complex& a, const Real& b) { return {a.re + b, a.im}; }
inline Complex operator-(const Complex& a, const Real& b) { return {a.re - b, a.im}; }
inline Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
inline Complex operator/(const Complex& a, long b) { return {a.re / b, a.im / b}; }

inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Complex& a) {
    Real r(a.prec());
    mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
    return r;
}
inline Complex conj(const Complex& a) { return {a.re, -a.im}; }

inline Complex inverse(const Complex& a) {
    Real n = norm(a);
    return {a.re / n, -a.im / n};
}
inline Complex operator/(const Complex& a, const Complex& b) { return a * inverse(b); }
inline Complex operator/(long a, const Complex& b) { return inverse(b) * a; }

inline Complex exp(const Complex& a) {
    Real e = exp(a.re);
    Real s(a.prec()), c(a.prec());
    sincos(a.im, s, c);
    return {e * c, e * s};
}

// Principal square root.
inline Complex sqrt(const Complex& a) {
    Real r = abs(a);
    Real x = sqrt((r + a.re) / 2);
    Real y = sqrt((r - a.re) / 2);
    if (a.im.sign() < 0) y = -y;
    return {x, y};
}

inline Complex pow(Complex base, unsigned long e) {
    Complex r(1, base.prec());
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

inline Complex i_times(const Complex& a) { return {-a.im, a.re}; }

}  // namespace cmpoly::mp
