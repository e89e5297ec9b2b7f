#ifndef CMPOLY_ANALYTIC_HPP
#define CMPOLY_ANALYTIC_HPP

#include <cmath>
#include <mutex>
#include <optional>
#include <vector>

#include "cmpoly/mpreal.hpp"
#include "cmpoly/polys.hpp"
#include "cmpoly/qforms.hpp"

namespace cmpoly::analytic {

using mp::Complex;
using mp::Real;

namespace detail {

// sigma_k(n) for k = 1, 3, 5 and n < N
class SigmaTable {
public:
    static const SigmaTable& get(std::size_t N) {
        static std::mutex mu;
        static SigmaTable table;
        std::lock_guard<std::mutex> lock(mu);
        if (table.size() < N) table.grow(std::max<std::size_t>(N, 2 * table.size()));
        return table;
    }
    std::size_t size() const { return s1.size(); }
    std::vector<u128> s1, s3, s5;

private:
    void grow(std::size_t N) {
        s1.assign(N, 0);
        s3.assign(N, 0);
        s5.assign(N, 0);
        for (std::size_t d = 1; d < N; ++d) {
            u128 d3 = static_cast<u128>(d) * d * d, d5 = d3 * d * d;
            for (std::size_t n = d; n < N; n += d) {
                s1[n] += d;
                s3[n] += d3;
                s5[n] += d5;
            }
        }
    }
};

inline void add_scaled(Complex& acc, const Complex& z, u128 k, Real& tmp) {
    if (k >> 64) {
        BigInt big = to_big(static_cast<u64>(k >> 64));
        big <<= 64;
        big += to_big(static_cast<u64>(k));
        acc += z * big;
        return;
    }
    mpfr_mul_ui(tmp.get(), z.re.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    acc.re += tmp;
    mpfr_mul_ui(tmp.get(), z.im.get(), static_cast<unsigned long>(k), MPFR_RNDN);
    acc.im += tmp;
}

inline double log2_abs(const Complex& z) {
    long e = z.exponent();
    if (e < -(1L << 30)) return -1e18;
    double hr = z.re.is_zero() ? 0 : std::ldexp(z.re.to_double(), static_cast<int>(-e));
    double hi = z.im.is_zero() ? 0 : std::ldexp(z.im.to_double(), static_cast<int>(-e));
    double m = std::hypot(hr, hi);
    return std::log2(m > 0 ? m : 1e-300) + static_cast<double>(e);
}

}  // namespace detail

inline Complex make_complex(const Real& re, const Real& im) { return Complex(re, im); }

inline Complex two_pi_i_exp(const Complex& z) {
    // exp(2 pi i z)
    Real tp = mp::pi(z.prec()) * 2;
    return mp::exp(Complex(-(z.im * tp), z.re * tp));
}

/// SL2(Z)-reduction of tau with the data needed to transport eta and E2.
struct Reduction {
    Complex tau;       // in the fundamental domain
    Complex eta_mult;  // eta(tau) = eta_mult * eta(z)
    Complex alpha;     // E2(tau) = alpha E2(z) + beta, and alpha = (cz+d)^2
    Complex beta;
};

inline Reduction reduce_tau(const Complex& z) {
    mpfr_prec_t prec = z.prec();
    Reduction r{z, Complex(1, prec), Complex(1, prec), Complex(prec)};
    Real pi = mp::pi(prec);
    Real one_minus(1.0 - std::ldexp(1.0, -40), prec);
    for (int guard = 0; guard < 100000; ++guard) {
        BigInt n = r.tau.re.round();
        if (n != 0) {
            r.tau.re = r.tau.re - Real(n, prec);
            Real ang = -(pi * Real(n, prec)) / 12;
            Real s(prec), c(prec);
            mp::sincos(ang, s, c);
            r.eta_mult = r.eta_mult * Complex(c, s);
        }
        if (mp::norm(r.tau) < one_minus) {
            const Complex& t = r.tau;
            // eta(-1/t) = sqrt(-i t) eta(t)
            Complex mit(t.im, -t.re);
            r.eta_mult = r.eta_mult * mp::sqrt(mit);
            Complex t2 = t * t;
            Complex corr = Complex(t.im, -t.re) * (Real(6, prec) / pi);  // -6 i t / pi
            r.beta = t2 * r.beta + corr;
            r.alpha = t2 * r.alpha;
            r.tau = Real(-1, prec) * mp::inverse(t);
            continue;
        }
        return r;
    }
    throw std::runtime_error("reduce_tau: no convergence");
}

// sum_{k in Z} (-1)^k q^{k(3k-1)/2}
inline Complex eta_product_series(const Complex& q) {
    mpfr_prec_t prec = q.prec();
    double lq = detail::log2_abs(q);
    Complex s(1, prec);
    Complex q3 = q * q * q;
    Complex qk = q;               // q^k
    Complex step = q;             // q^(3k+1) at k = 0
    Complex base(1, prec);        // q^(k(3k-1)/2)
    for (long k = 1;; ++k) {
        base = base * step;       // now q^(k(3k-1)/2)
        step = step * q3;
        Complex other = base * qk;
        if (k % 2)
            s -= base + other;
        else
            s += base + other;
        qk = qk * q;
        if (static_cast<double>(k * (3 * k - 1) / 2) * lq < -static_cast<double>(prec) - 16) break;
    }
    return s;
}

struct Level1 {
    Complex eta, E2, E4, E6;
};

// eta, E2, E4, E6 at a point of the upper half plane.
inline Level1 level1(const Complex& z, bool eisenstein = true) {
    mpfr_prec_t prec = z.prec();
    Reduction red = reduce_tau(z);
    Complex q = two_pi_i_exp(red.tau);
    Complex q24 = two_pi_i_exp(red.tau / 24);
    Complex eta_t = q24 * eta_product_series(q);
    Level1 out{eta_t / red.eta_mult, Complex(prec), Complex(prec), Complex(prec)};
    if (!eisenstein) return out;
    double lq = detail::log2_abs(q);
    std::size_t N = 2;
    while (static_cast<double>(N) * lq + 6 * std::log2(static_cast<double>(N)) > -static_cast<double>(prec) - 16) ++N;
    const auto& S = detail::SigmaTable::get(N + 1);
    Complex a1(prec), a3(prec), a5(prec), qn(1, prec);
    Real tmp(prec);
    for (std::size_t n = 1; n <= N; ++n) {
        qn = qn * q;
        detail::add_scaled(a1, qn, S.s1[n], tmp);
        detail::add_scaled(a3, qn, S.s3[n], tmp);
        detail::add_scaled(a5, qn, S.s5[n], tmp);
    }
    Complex E2t = Complex(1, prec) - a1 * 24;
    Complex E4t = Complex(1, prec) + a3 * 240;
    Complex E6t = Complex(1, prec) - a5 * 504;
    Complex ia = mp::inverse(red.alpha);
    out.E2 = (E2t - red.beta) * ia;
    out.E4 = E4t * ia * ia;
    out.E6 = E6t * ia * ia * ia;
    return out;
}

inline Complex eval_j(const Complex& z) {
    Reduction red = reduce_tau(z);
    Complex q = two_pi_i_exp(red.tau);
    Complex r = eta_product_series(q * q) / eta_product_series(q);
    Complex r2 = r * r, r4 = r2 * r2, r8 = r4 * r4, r16 = r8 * r8;
    Complex f = q * r16 * r8;
    Complex g = Complex(1, z.prec()) + f * 256;
    return g * g * g / f;
}

inline Complex eval_eta(const Complex& z) { return level1(z, false).eta; }
inline Complex eval_E2(const Complex& z) { return level1(z).E2; }
inline Complex eval_E4(const Complex& z) { return level1(z).E4; }
inline Complex eval_E6(const Complex& z) { return level1(z).E6; }
inline Complex eval_delta(const Complex& z) { return mp::pow(eval_eta(z), 24); }

// E2*(z) = E2(z) - 3/(pi y)
inline Complex eval_E2star(const Complex& z) {
    Real pi = mp::pi(z.prec());
    return eval_E2(z) - Real(3, z.prec()) / (pi * z.im);
}

inline Complex gamma_from(const Level1& v, const Complex& j, const Real& y) {
    mpfr_prec_t prec = y.prec();
    Complex E2s = v.E2 - Real(3, prec) / (mp::pi(prec) * y);
    Complex t1 = v.E4 * E2s / (v.E6 * j * 6);
    Complex t2 = (j * 7 - 6912) / (j * (j - 1728) * 6);
    return t1 - t2;
}

inline Complex eval_gamma(const Complex& z) { return gamma_from(level1(z), eval_j(z), z.im); }

/// Values of the level-6 weight-zero quantities at one point.
struct Level6 {
    Complex P, dP;  // P and q dP/dq
    Complex E2, E4, E6, j;
};

inline Level6 level6(const Complex& z) {
    mpfr_prec_t prec = z.prec();
    const long ks[4] = {1, 2, 3, 6};
    const long cs[4] = {1, -2, -3, 6};
    Complex N(prec), qN(prec), logd(prec), den(1, prec);
    Level1 v1;
    for (int t = 0; t < 4; ++t) {
        Level1 v = level1(z * ks[t]);
        N += v.E2 * cs[t];
        qN += (v.E2 * v.E2 - v.E4) * (cs[t] * ks[t]);
        logd += v.E2 * ks[t];
        den = den * v.eta * v.eta;
        if (t == 0) v1 = v;
    }
    qN = qN / 12;
    logd = logd / 12;
    Complex inv2den = mp::inverse(den * 2);
    Level6 out{N * inv2den, (qN - N * logd) * inv2den, v1.E2, v1.E4, v1.E6, eval_j(z)};
    return out;
}

inline Complex eval_P(const Complex& z) { return level6(z).P; }

inline Complex fp_from(const Level6& v, const Real& y) {
    mpfr_prec_t prec = y.prec();
    return -v.dP - v.P / (mp::pi(prec) * y * 2);
}

inline Complex eval_Fp(const Complex& z) { return fp_from(level6(z), z.im); }

// B = P E4^2 E6 / Delta, Ahat = j(j-1728)(-qP' - P E2/6) + B (7j - 6912)/6
inline std::pair<Complex, Complex> ab_from(const Level6& v) {
    Complex E43 = v.E4 * v.E4 * v.E4;
    Complex delta = (E43 - v.E6 * v.E6) / 1728;
    Complex B = v.P * v.E4 * v.E4 * v.E6 / delta;
    Complex theta = v.dP + v.P * v.E2 / 6;
    Complex A = -(v.j * (v.j - 1728) * theta) + B * (v.j * 7 - 6912) / 6;
    return {A, B};
}

inline std::pair<Complex, Complex> eval_AB(const Complex& z) { return ab_from(level6(z)); }

// Zagier's K: 288 (E2* E4 E6 + 3 E4^3 + 2 E6^2) / (E4^3 - E6^2)
inline Complex eval_K(const Complex& z) {
    Level1 v = level1(z);
    mpfr_prec_t prec = z.prec();
    Complex E2s = v.E2 - Real(3, prec) / (mp::pi(prec) * z.im);
    Complex E43 = v.E4 * v.E4 * v.E4, E62 = v.E6 * v.E6;
    return (E2s * v.E4 * v.E6 + E43 * 3 + E62 * 2) * 288 / (E43 - E62);
}

enum class Fn { J, Gamma, P, Fp, AHat, B, K };

inline Complex eval(Fn f, const Complex& z) {
    switch (f) {
        case Fn::J: return eval_j(z);
        case Fn::Gamma: return eval_gamma(z);
        case Fn::P: return eval_P(z);
        case Fn::Fp: return eval_Fp(z);
        case Fn::AHat: return eval_AB(z).first;
        case Fn::B: return eval_AB(z).second;
        case Fn::K: return eval_K(z);
    }
    return Complex(z.prec());
}

/// Root (-b + sqrt D)/(2a) of a form, at the given precision.
inline Complex heegner_point(const QuadForm& f, mpfr_prec_t prec) {
    Real D(static_cast<long>(f.disc()), prec);
    Real re = Real(-f.b, prec) / (2 * f.a);
    Real im = mp::sqrt(-D) / (2 * f.a);
    return Complex(re, im);
}

// ---- bounds ----

/// sum over reduced forms of log(exp(pi sqrt|D| / a) + 2114.567)
inline double bound_M(i64 D) {
    double s = 0, r = M_PI * std::sqrt(static_cast<double>(-D));
    for (const QuadForm& f : primitive_reduced_forms(D)) {
        double x = r / static_cast<double>(f.a);
        s += x + std::log1p(2114.567 * std::exp(-x));
    }
    return s;
}

inline double log_binomial(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

/// Bound on the log height of H_D(x).
inline double bound_Bj(i64 D) {
    int h = class_number(D);
    return bound_M(D) + log_binomial(h, h / 2);
}

// ---- polynomial helpers over C ----

inline std::vector<Complex> poly_from_roots(const std::vector<Complex>& rs, mpfr_prec_t prec) {
    std::vector<Complex> c{Complex(1, prec)};
    for (const Complex& r : rs) {
        c.push_back(Complex(prec));
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - c[i] * r;
        c[0] = -(c[0] * r);
    }
    return c;
}

inline bool near_integer(const Real& x, BigInt& out, long tol_bits = 32) {
    out = x.round();
    Real diff = mp::abs(x - Real(out, x.prec()));
    return diff.is_zero() || diff.exponent() < -tol_bits;
}

/// H_D(x) from the complex j-values at the reduced forms.
inline RatPoly hilbert_analytic(i64 D, long guard = 64) {
    require_discriminant(D);
    std::vector<QuadForm> forms = primitive_reduced_forms(D);
    double Bj = bound_Bj(D);
    for (int attempt = 0; attempt < 5; ++attempt) {
        mpfr_prec_t prec = static_cast<mpfr_prec_t>(Bj / std::log(2.0)) + guard + 16;
        // real polynomial, lowest degree first
        std::vector<Real> poly{Real(1L, prec)};
        auto mul_by = [&](const std::vector<Real>& f) {
            std::vector<Real> r(poly.size() + f.size() - 1, Real(0L, prec));
            for (std::size_t i = 0; i < poly.size(); ++i)
                for (std::size_t k = 0; k < f.size(); ++k) r[i + k] += poly[i] * f[k];
            poly = std::move(r);
        };
        for (const QuadForm& f : forms) {
            bool ambiguous = f.b == 0 || f.b == f.a || f.a == f.c;
            if (!ambiguous && f.b < 0) continue;
            Complex j = eval_j(heegner_point(f, prec));
            if (ambiguous)
                mul_by({-j.re, Real(1L, prec)});
            else
                mul_by({mp::norm(j), -(j.re * 2), Real(1L, prec)});
        }
        RatPoly out;
        bool ok = true;
        for (const Real& c : poly) {
            BigInt v;
            ok = ok && near_integer(c, v);
            out.c.emplace_back(v);
        }
        if (ok && out.degree() == static_cast<int>(forms.size()) && out.lead() == 1) return out;
        guard *= 2;
    }
    throw Error(ErrorKind::RoundingFailure, "hilbert_analytic: rounding failed for D=" + std::to_string(D));
}

// ---- bivariate recovery from samples ----

namespace detail {

// Integer polynomial sum c(k,d) X^k J^d from values at nodes J_s.  values[s][k]
// is the coefficient of X^k at node s.
inline std::optional<BiPoly> recover_bipoly(const std::vector<Complex>& nodes, const std::vector<std::vector<Complex>>& values,
                                            const Complex& check_node, const std::vector<Complex>& check_values, int dx,
                                            long tol_bits = 24) {
    std::size_t N = nodes.size();
    mpfr_prec_t prec = nodes[0].prec();
    std::vector<Complex> M = poly_from_roots(nodes, prec);
    std::vector<std::vector<Complex>> acc(dx + 1, std::vector<Complex>(N, Complex(prec)));
    for (std::size_t s = 0; s < N; ++s) {
        Complex w(1, prec);
        for (std::size_t t = 0; t < N; ++t)
            if (t != s) w = w * (nodes[s] - nodes[t]);
        w = mp::inverse(w);
        // q = M / (J - J_s)
        std::vector<Complex> q(N, Complex(prec));
        Complex r(prec);
        for (std::size_t k = N + 1; k-- > 1;) {
            r = r * nodes[s] + M[k];
            q[k - 1] = r;
        }
        for (int k = 0; k <= dx; ++k) {
            Complex u = values[s][k] * w;
            for (std::size_t d = 0; d < N; ++d) acc[k][d] += u * q[d];
        }
    }
    BiPoly P(dx, static_cast<int>(N) - 1);
    for (int k = 0; k <= dx; ++k) {
        for (std::size_t d = 0; d < N; ++d) {
            BigInt v;
            if (!near_integer(acc[k][d].re, v, tol_bits)) return std::nullopt;
            if (!acc[k][d].im.is_zero() && acc[k][d].im.exponent() > -tol_bits) return std::nullopt;
            P.at(k, static_cast<int>(d)) = v;
        }
    }
    for (int k = 0; k <= dx; ++k) {
        Complex v(prec);
        for (std::size_t d = N; d-- > 0;) v = v * check_node + Complex(Real(P.at(k, static_cast<int>(d)), prec), Real(prec));
        Complex diff = v - check_values[k];
        long scale = std::max<long>(check_values[k].exponent(), 0);
        if (!diff.is_zero() && diff.exponent() > scale - static_cast<long>(prec) / 2) return std::nullopt;
    }
    return P;
}

inline long max_exponent(const std::vector<std::vector<Complex>>& vals) {
    long e = 0;
    for (auto& row : vals)
        for (auto& v : row) e = std::max(e, v.exponent());
    return e;
}

struct Mat2 {
    long a, b, c, d;
};

inline Complex apply(const Mat2& g, const Complex& z) {
    return (z * g.a + g.b) / (z * g.c + g.d);
}

}  // namespace detail

/// Phi_m by numerical interpolation over the coset images of sample points.
inline BiPoly phi_analytic_oracle(u64 m, double height_hint = 0) {
    if (m < 2) throw Error(ErrorKind::BadInput, "level must be at least 2");
    int n = static_cast<int>(psi(m));
    std::vector<detail::Mat2> cosets;
    for (u64 a = 1; a <= m; ++a) {
        if (m % a) continue;
        u64 d = m / a;
        for (u64 b = 0; b < d; ++b)
            if (std::gcd(std::gcd(a, b), d) == 1) cosets.push_back({static_cast<long>(a), static_cast<long>(b), 0, static_cast<long>(d)});
    }
    const double Y0 = 2.0;
    if (height_hint <= 0) height_hint = 6.0 * m * std::log(static_cast<double>(m)) + 18.0 * m;
    double est = height_hint + n * 2 * M_PI * Y0 + 2 * M_PI * m * (Y0 + 1 / Y0);
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(est / std::log(2.0)) + 96;
    int N = n + 1;
    for (int attempt = 0; attempt < 4; ++attempt, prec *= 2) {
        auto sample = [&](const Complex& z, Complex& node, std::vector<Complex>& vals) {
            node = eval_j(z);
            std::vector<Complex> rs;
            for (auto& g : cosets) {
                Complex w = (z * g.a + g.b) / Real(g.d, prec);
                rs.push_back(eval_j(w));
            }
            vals = poly_from_roots(rs, prec);
        };
        std::vector<Complex> nodes(N, Complex(prec));
        std::vector<std::vector<Complex>> vals(N);
        for (int s = 0; s < N; ++s) {
            Complex z(Real(static_cast<double>(s) / N, prec), Real(Y0, prec));
            z.re = Real(static_cast<long>(s), prec) / N;
            sample(z, nodes[s], vals[s]);
        }
        Complex cz(Real(1L, prec) / (2 * N), Real(Y0, prec));
        Complex cnode(prec);
        std::vector<Complex> cvals;
        sample(cz, cnode, cvals);
        if (auto P = detail::recover_bipoly(nodes, vals, cnode, cvals, n)) {
            if (P->symmetric()) return *P;
        }
    }
    throw Error(ErrorKind::RoundingFailure, "phi_analytic_oracle: rounding failed for m=" + std::to_string(m));
}

/// Right coset representatives of Gamma0(6) in SL2(Z), one per point of P^1(Z/6Z).
inline std::vector<detail::Mat2> gamma0_6_cosets() {
    std::vector<detail::Mat2> out;
    std::vector<std::pair<long, long>> seen;
    for (long c = 0; c < 6; ++c) {
        for (long d = 0; d < 6; ++d) {
            if (std::gcd(std::gcd(c, d), 6L) != 1) continue;
            bool dup = false;
            for (auto [c2, d2] : seen)
                if ((5 * c2) % 6 == c && (5 * d2) % 6 == d) dup = true;
            for (auto [c2, d2] : seen)
                if (c2 == c && d2 == d) dup = true;
            if (dup) continue;
            seen.emplace_back(c, d);
            long dd = d;
            while (std::gcd(c, dd) != 1) dd += 6;
            // a dd - b c = 1
            long a = 0, b = 0;
            if (c == 0) {
                a = 1;
                b = 0;
                dd = 1;
            } else {
                long g0 = dd, g1 = c, x0 = 1, x1 = 0;
                while (g1) {
                    long q = g0 / g1;
                    std::tie(g0, g1) = std::make_pair(g1, g0 - q * g1);
                    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
                }
                // x0 dd = 1 mod c
                a = x0;
                b = (a * dd - 1) / c;
            }
            out.push_back({a, b, c, dd});
        }
    }
    return out;
}

/// Psi_g(X, j) = prod over Gamma0(6) cosets of (X - g(alpha z)), g in {Ahat, B}.
inline BiPoly psi_polynomial(Fn g, int dy_bound = 40) {
    auto cosets = gamma0_6_cosets();
    int dx = static_cast<int>(cosets.size());
    const double Y0 = 1.5;
    int N = dy_bound + 1;
    mpfr_prec_t prec = 512;
    for (int attempt = 0; attempt < 6; ++attempt) {
        auto sample = [&](const Complex& z, Complex& node, std::vector<Complex>& vals) {
            node = eval_j(z);
            std::vector<Complex> rs;
            for (auto& a : cosets) {
                auto ab = eval_AB(detail::apply(a, z));
                rs.push_back(g == Fn::AHat ? ab.first : ab.second);
            }
            vals = poly_from_roots(rs, prec);
        };
        std::vector<Complex> nodes(N, Complex(prec));
        std::vector<std::vector<Complex>> vals(N);
        for (int s = 0; s < N; ++s) {
            Complex z(Real(static_cast<long>(s), prec) / N, Real(Y0, prec));
            sample(z, nodes[s], vals[s]);
        }
        Complex cz(Real(1L, prec) / (2 * N), Real(Y0, prec));
        Complex cnode(prec);
        std::vector<Complex> cvals;
        sample(cz, cnode, cvals);
        long need = detail::max_exponent(vals) + N * static_cast<long>(2 * M_PI * Y0 / std::log(2.0) + 1) + 96;
        if (need > prec) {
            prec = need;
            continue;
        }
        if (auto P = detail::recover_bipoly(nodes, vals, cnode, cvals, dx)) {
            BiPoly out(dx, std::max(P->degree_y(), 0));
            for (int i = 0; i <= dx; ++i)
                for (int j = 0; j <= out.dy; ++j) out.at(i, j) = P->at(i, j);
            return out;
        }
        prec *= 2;
    }
    throw Error(ErrorKind::RoundingFailure, "psi_polynomial: rounding failed");
}

/// H_D(g; x) over Q(sqrt D) from values at level-6 Heegner points.
inline KQuadPoly kfield_class_poly(Fn g, i64 D) {
    auto reps = heegner_reps_level6(D);
    mpfr_prec_t prec = 256;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<Complex> vals;
        for (auto& r : reps) vals.push_back(eval(g, heegner_point(r.form, prec)));
        std::vector<Complex> c = poly_from_roots(vals, prec);
        long e = 0;
        for (auto& v : c) e = std::max(e, v.exponent());
        if (e + 96 > prec) {
            prec = e + 160;
            continue;
        }
        KQuadPoly out;
        out.D = D;
        bool ok = true;
        Real sq = mp::sqrt(Real(static_cast<long>(-D), prec));
        for (auto& v : c) {
            BigInt u, w;
            ok = ok && near_integer(v.re * 2, u) && near_integer(v.im * 2 / sq, w);
            out.u.push_back(u);
            out.v.push_back(w);
        }
        if (ok) return out;
        prec *= 2;
    }
    throw Error(ErrorKind::RoundingFailure, "kfield_class_poly: rounding failed");
}

/// H_n^part(x) directly from the Hurwitz-class set of level-6 Heegner points.
inline RatPoly partition_poly_oracle(u64 n) {
    i64 D = 1 - 24 * static_cast<i64>(n);
    auto reps = heegner_reps_level6(D, false);
    BigInt scale = ipow(to_big(static_cast<u64>(-D)), reps.size());
    mpfr_prec_t prec = 256;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<Complex> vals;
        for (auto& r : reps) vals.push_back(eval_Fp(heegner_point(r.form, prec)));
        std::vector<Complex> c = poly_from_roots(vals, prec);
        long e = 0;
        for (auto& v : c) e = std::max(e, v.exponent());
        e += static_cast<long>(mpz_sizeinbase(scale.get_mpz_t(), 2));
        if (e + 96 > prec) {
            prec = e + 160;
            continue;
        }
        RatPoly out;
        bool ok = true;
        for (auto& v : c) {
            BigInt num;
            ok = ok && near_integer(v.re * scale, num);
            ok = ok && (v.im.is_zero() || (v.im * scale).exponent() < -32);
            BigRat q(num, scale);
            q.canonicalize();
            out.c.push_back(q);
        }
        if (ok) return out;
        prec *= 2;
    }
    throw Error(ErrorKind::RoundingFailure, "partition_poly_oracle: rounding failed");
}

}  // namespace cmpoly::analytic

#endif
