#ifndef CMPOLY_ECFP_HPP
#define CMPOLY_ECFP_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "cmpoly/fppoly.hpp"

namespace cmpoly {

/// Short Weierstrass curve y^2 = x^3 + A x + B over F_p.
struct Curve {
    PrimeField F;
    u64 A = 0, B = 0;
};

struct Point {
    u64 x = 0, y = 0;
    bool inf = true;

    static Point infinity() { return {}; }
    static Point affine(u64 x, u64 y) { return {x, y, false}; }
    bool operator==(const Point& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
};

inline u64 rhs(const Curve& E, u64 x) {
    const PrimeField& F = E.F;
    return F.add(F.mul(F.add(F.mul(x, x), E.A), x), E.B);
}

inline bool on_curve(const Curve& E, const Point& P) {
    return P.inf || E.F.mul(P.y, P.y) == rhs(E, P.x);
}

inline u64 discriminant_part(const Curve& E) {
    const PrimeField& F = E.F;
    u64 a3 = F.mul(F.mul(E.A, E.A), E.A);
    return F.add(F.mul(4, a3), F.mul(27, F.mul(E.B, E.B)));
}

inline u64 j_invariant(const Curve& E) {
    const PrimeField& F = E.F;
    u64 a3 = F.mul(4, F.mul(F.mul(E.A, E.A), E.A));
    u64 den = F.add(a3, F.mul(27, F.mul(E.B, E.B)));
    return F.mul(F.mul(1728 % F.modulus(), a3), F.inv(den));
}

inline Curve curve_from_j(const PrimeField& F, u64 j) {
    j %= F.modulus();
    if (j == 0) return {F, 0, 1};
    if (j == 1728 % F.modulus()) return {F, 1, 0};
    u64 k = F.mul(j, F.inv(F.sub(1728 % F.modulus(), j)));
    return {F, F.mul(3, k), F.mul(2, k)};
}

inline u64 non_residue(const PrimeField& F) {
    for (u64 d = 2;; ++d) {
        if (F.pow(d, (F.modulus() - 1) / 2) == F.modulus() - 1) return d;
    }
}

inline Curve twist(const Curve& E) {
    const PrimeField& F = E.F;
    u64 d = non_residue(F);
    u64 d2 = F.mul(d, d);
    return {F, F.mul(E.A, d2), F.mul(E.B, F.mul(d2, d))};
}

inline Point negate(const Curve& E, const Point& P) {
    if (P.inf) return P;
    return Point::affine(P.x, E.F.neg(P.y));
}

inline Point add(const Curve& E, const Point& P, const Point& Q) {
    const PrimeField& F = E.F;
    if (P.inf) return Q;
    if (Q.inf) return P;
    u64 lam;
    if (P.x == Q.x) {
        if (F.add(P.y, Q.y) == 0) return Point::infinity();
        lam = F.mul(F.add(F.mul(3, F.mul(P.x, P.x)), E.A), F.inv(F.add(P.y, P.y)));
    } else {
        lam = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)));
    }
    u64 x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x);
    u64 y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y);
    return Point::affine(x3, y3);
}

namespace detail {

struct Jac {
    u64 X, Y, Z;
};

inline Jac jac_dbl(const Curve& E, const Jac& P) {
    const PrimeField& F = E.F;
    if (P.Z == 0 || P.Y == 0) return {1, 1, 0};
    u64 YY = F.mul(P.Y, P.Y);
    u64 S = F.mul(4, F.mul(P.X, YY));
    u64 ZZ = F.mul(P.Z, P.Z);
    u64 M = F.add(F.mul(3, F.mul(P.X, P.X)), F.mul(E.A, F.mul(ZZ, ZZ)));
    u64 X3 = F.sub(F.mul(M, M), F.add(S, S));
    u64 Y3 = F.sub(F.mul(M, F.sub(S, X3)), F.mul(8, F.mul(YY, YY)));
    u64 Z3 = F.mul(2, F.mul(P.Y, P.Z));
    return {X3, Y3, Z3};
}

// Mixed addition of a Jacobian point and an affine point.
inline Jac jac_add_affine(const Curve& E, const Jac& P, const Point& Q) {
    const PrimeField& F = E.F;
    if (Q.inf) return P;
    if (P.Z == 0) return {Q.x, Q.y, 1};
    u64 Z2 = F.mul(P.Z, P.Z);
    u64 U2 = F.mul(Q.x, Z2);
    u64 S2 = F.mul(Q.y, F.mul(Z2, P.Z));
    u64 H = F.sub(U2, P.X);
    u64 r = F.sub(S2, P.Y);
    if (H == 0) {
        if (r == 0) return jac_dbl(E, P);
        return {1, 1, 0};
    }
    u64 HH = F.mul(H, H);
    u64 HHH = F.mul(HH, H);
    u64 V = F.mul(P.X, HH);
    u64 X3 = F.sub(F.sub(F.mul(r, r), HHH), F.add(V, V));
    u64 Y3 = F.sub(F.mul(r, F.sub(V, X3)), F.mul(P.Y, HHH));
    u64 Z3 = F.mul(P.Z, H);
    return {X3, Y3, Z3};
}

inline Point to_affine(const Curve& E, const Jac& P) {
    const PrimeField& F = E.F;
    if (P.Z == 0) return Point::infinity();
    u64 zi = F.inv(P.Z);
    u64 zi2 = F.mul(zi, zi);
    return Point::affine(F.mul(P.X, zi2), F.mul(P.Y, F.mul(zi2, zi)));
}

}  // namespace detail

inline Point mul(const Curve& E, const BigInt& k, const Point& P) {
    if (P.inf || k == 0) return Point::infinity();
    Point Q = k < 0 ? negate(E, P) : P;
    BigInt a = abs(k);
    detail::Jac R{1, 1, 0};
    for (std::size_t i = mpz_sizeinbase(a.get_mpz_t(), 2); i-- > 0;) {
        R = detail::jac_dbl(E, R);
        if (mpz_tstbit(a.get_mpz_t(), i)) R = detail::jac_add_affine(E, R, Q);
    }
    return detail::to_affine(E, R);
}

inline Point mul(const Curve& E, u64 k, const Point& P) { return mul(E, to_big(k), P); }

template <class Rng>
Point random_point(const Curve& E, Rng& rng) {
    const PrimeField& F = E.F;
    for (;;) {
        u64 x = rng() % F.modulus();
        u64 r = rhs(E, x);
        if (auto y = sqrt_mod(r, F.modulus())) {
            u64 yy = (rng() & 1) ? F.neg(*y) : *y;
            return Point::affine(x, yy);
        }
    }
}

namespace detail {

// All n in [lo, hi] with n P = O.
inline std::vector<u64> bsgs_orders(const Curve& E, const Point& P, u64 lo, u64 hi) {
    std::vector<u64> out;
    u64 width = hi - lo + 1;
    u64 s = static_cast<u64>(std::sqrt(static_cast<double>(width))) + 1;
    std::unordered_map<u64, std::vector<std::pair<u64, u64>>> baby;
    Point R = Point::infinity();
    for (u64 j = 0; j < s; ++j) {
        u64 key = R.inf ? ~u64(0) : R.x;
        baby[key].emplace_back(j, R.inf ? 0 : R.y);
        R = add(E, R, P);
    }
    Point step = mul(E, s, P);
    Point Q = mul(E, lo, P);
    for (u64 i = 0; i * s < width; ++i) {
        // lo + i s + j kills P iff -(Q) = jP with Q = (lo + i s) P
        Point T = negate(E, Q);
        u64 key = T.inf ? ~u64(0) : T.x;
        auto it = baby.find(key);
        if (it != baby.end()) {
            for (auto [j, y] : it->second) {
                if (T.inf || y == T.y) {
                    u64 n = lo + i * s + j;
                    if (n <= hi) out.push_back(n);
                }
            }
        }
        Q = add(E, Q, step);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Number of F_p-points.
inline u64 curve_order(const Curve& E) {
    const PrimeField& F = E.F;
    u64 p = F.modulus();
    if (p < 2000) {
        u64 n = 1;
        for (u64 x = 0; x < p; ++x) {
            u64 r = rhs(E, x);
            if (r == 0)
                n += 1;
            else if (F.pow(r, (p - 1) / 2) == 1)
                n += 2;
        }
        return n;
    }
    u64 sq = static_cast<u64>(2 * std::sqrt(static_cast<double>(p))) + 2;
    u64 lo = p + 1 - sq, hi = p + 1 + sq;
    std::mt19937_64 rng(p ^ E.A * 31 ^ E.B * 131);
    Curve T = twist(E);
    std::vector<u64> cand;
    for (int attempt = 0; attempt < 200; ++attempt) {
        if (cand.empty()) {
            cand = detail::bsgs_orders(E, random_point(E, rng), lo, hi);
            if (cand.size() > 64) cand.clear();
            continue;
        }
        if (cand.size() == 1) return cand[0];
        Point P = random_point(E, rng);
        Point Q = random_point(T, rng);
        std::vector<u64> keep;
        for (u64 n : cand) {
            if (mul(E, n, P).inf && mul(T, 2 * p + 2 - n, Q).inf) keep.push_back(n);
        }
        cand = std::move(keep);
    }
    if (cand.size() == 1) return cand[0];
    throw std::runtime_error("curve_order: did not converge");
}

/// Kernel of an F_p-rational l-isogeny, given by its monic kernel polynomial.
struct KernelSpec {
    u64 ell = 0;
    FpPoly poly;
};

inline u64 j_from_ab(const PrimeField& F, u64 A, u64 B) {
    u64 a3 = F.mul(4, F.mul(F.mul(A, A), A));
    u64 den = F.add(a3, F.mul(27, F.mul(B, B)));
    if (den == 0) throw PrimeRejected("singular isogenous curve");
    return F.mul(F.mul(1728 % F.modulus(), a3), F.inv(den));
}

/// Codomain of the normalized isogeny with the given kernel.
inline Curve velu_image(const Curve& E, const KernelSpec& K) {
    const PrimeField& F = E.F;
    const std::vector<u64>& h = K.poly.c;
    std::size_t d = h.size() - 1;
    u64 t, w;
    if (K.ell == 2) {
        u64 x0 = F.neg(h[0]);
        t = F.add(F.mul(3, F.mul(x0, x0)), E.A);
        w = F.mul(x0, t);
    } else {
        u64 s1 = d >= 1 ? F.neg(h[d - 1]) : 0;
        u64 s2 = d >= 2 ? h[d - 2] : 0;
        u64 s3 = d >= 3 ? F.neg(h[d - 3]) : 0;
        u64 dd = d % F.modulus();
        u64 p2 = F.sub(F.mul(s1, s1), F.mul(2, s2));
        u64 p3 = F.add(F.sub(F.mul(s1, F.mul(s1, s1)), F.mul(3, F.mul(s1, s2))), F.mul(3, s3));
        t = F.add(F.mul(6, p2), F.mul(2, F.mul(E.A, dd)));
        w = F.add(F.add(F.mul(10, p3), F.mul(6, F.mul(E.A, s1))), F.mul(4, F.mul(E.B, dd)));
    }
    return {F, F.sub(E.A, F.mul(5, t)), F.sub(E.B, F.mul(7, w))};
}

inline u64 velu_image_j(const Curve& E, const KernelSpec& K) {
    Curve I = velu_image(E, K);
    return j_from_ab(E.F, I.A, I.B);
}

namespace detail {

inline FpPoly kernel_from_points(const PrimeField& F, const std::vector<u64>& xs) { return from_roots(F, xs); }

// x-coordinates of P, 2P, ..., ((l-1)/2) P.
inline std::vector<u64> half_multiples_x(const Curve& E, const Point& P, u64 ell) {
    std::vector<u64> xs;
    Point Q = P;
    for (u64 k = 1; k <= (ell - 1) / 2; ++k) {
        xs.push_back(Q.x);
        Q = add(E, Q, P);
    }
    return xs;
}

inline u64 vp(u64 n, u64 ell) {
    u64 e = 0;
    while (n % ell == 0) {
        n /= ell;
        ++e;
    }
    return e;
}

inline u64 point_order_log(const Curve& E, Point Q, u64 ell) {
    u64 k = 0;
    while (!Q.inf) {
        Q = mul(E, ell, Q);
        ++k;
    }
    return k;
}

}  // namespace detail

/// Basis of E[l] when it is contained in E(F_p), given #E(F_p) = N.
template <class Rng>
std::optional<std::pair<Point, Point>> torsion_basis(const Curve& E, u64 ell, u64 N, Rng& rng, int attempts = 40) {
    u64 e = detail::vp(N, ell);
    if (e < 2) return std::nullopt;
    u64 cof = N;
    for (u64 i = 0; i < e; ++i) cof /= ell;
    auto sylow = [&] { return mul(E, cof, random_point(E, rng)); };
    Point Q1 = Point::infinity();
    u64 a = 0;
    for (int i = 0; i < attempts; ++i) {
        Point Q = sylow();
        u64 k = detail::point_order_log(E, Q, ell);
        if (k > a) {
            a = k;
            Q1 = Q;
        }
    }
    if (a == 0) return std::nullopt;
    // R generates the order-l part of <Q1>
    Point R = Q1;
    for (u64 i = 1; i < a; ++i) R = mul(E, ell, R);
    std::vector<Point> line;
    {
        Point T = Point::infinity();
        for (u64 s = 0; s < ell; ++s) {
            line.push_back(T);
            T = add(E, T, R);
        }
    }
    for (int i = 0; i < attempts; ++i) {
        Point Q2 = sylow();
        for (int guard = 0; guard < 64 && !Q2.inf; ++guard) {
            u64 k = detail::point_order_log(E, Q2, ell);
            if (k > a) break;
            Point S = Q2;
            for (u64 s = 1; s < k; ++s) S = mul(E, ell, S);
            auto it = std::find(line.begin(), line.end(), S);
            if (it == line.end()) return std::make_pair(R, S);
            u64 s = static_cast<u64>(it - line.begin());
            // S = s l^(a-1) Q1 = l^(k-1) (s l^(a-k) Q1)
            BigInt c = to_big(s) * ipow(to_big(ell), a - k);
            Q2 = add(E, Q2, negate(E, mul(E, c, Q1)));
        }
    }
    return std::nullopt;
}

/// j-invariants of all l+1 curves l-isogenous to E, computed from a rational
/// basis of E[l] (requires #E(F_p) = N and E[l] in E(F_p)).
template <class Rng>
std::optional<std::vector<u64>> neighbors_from_torsion(const Curve& E, u64 ell, u64 N, Rng& rng) {
    const PrimeField& F = E.F;
    if (ell == 2) {
        std::vector<u64> xs = roots_split(FpPoly(F, {E.B, E.A, 0, 1}));
        if (xs.size() != 3) return std::nullopt;
        std::vector<u64> out;
        for (u64 x0 : xs) out.push_back(velu_image_j(E, KernelSpec{2, FpPoly::linear(F, x0)}));
        return out;
    }
    auto basis = torsion_basis(E, ell, N, rng);
    if (!basis) return std::nullopt;
    auto [R, S] = *basis;
    std::size_t L = ell;
    std::vector<u64> s1(L + 1, 0), s2(L + 1, 0), s3(L + 1, 0);
    auto acc = [&](std::size_t line, u64 x) {
        u64 x2 = F.mul(x, x);
        s1[line] = F.add(s1[line], x);
        s2[line] = F.add(s2[line], x2);
        s3[line] = F.add(s3[line], F.mul(x2, x));
    };
    {
        Point T = R;
        for (std::size_t b = 1; b < L; ++b) {
            acc(L, T.x);
            T = add(E, T, R);
        }
        if (!T.inf) return std::nullopt;
    }
    // rows a = 1..l-1: points aS + bR, b = 0..l-1
    std::vector<Point> cur(L);
    cur[1] = S;
    for (std::size_t a = 2; a < L; ++a) cur[a] = add(E, cur[a - 1], S);
    if (!add(E, cur[L - 1], S).inf) return std::nullopt;
    std::vector<u64> ainv(L);
    for (std::size_t a = 1; a < L; ++a) ainv[a] = invmod(a, ell);
    std::vector<u64> den(L - 1);
    for (std::size_t b = 0; b < L; ++b) {
        for (std::size_t a = 1; a < L; ++a) acc(b * ainv[a] % L, cur[a].x);
        if (b + 1 == L) break;
        for (std::size_t a = 1; a < L; ++a) den[a - 1] = F.sub(R.x, cur[a].x);
        F.batch_inv(den);
        for (std::size_t a = 1; a < L; ++a) {
            const Point& P = cur[a];
            u64 lam = F.mul(F.sub(R.y, P.y), den[a - 1]);
            u64 x3 = F.sub(F.sub(F.mul(lam, lam), P.x), R.x);
            u64 y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y);
            cur[a] = Point::affine(x3, y3);
        }
    }
    std::vector<u64> out;
    u64 lm1 = (ell - 1) % F.modulus();
    for (std::size_t line = 0; line <= L; ++line) {
        u64 t = F.add(F.mul(3, s2[line]), F.mul(E.A, lm1));
        u64 w = F.add(F.add(F.mul(5, s3[line]), F.mul(3, F.mul(E.A, s1[line]))), F.mul(2, F.mul(E.B, lm1)));
        out.push_back(j_from_ab(F, F.sub(E.A, F.mul(5, t)), F.sub(E.B, F.mul(7, w))));
    }
    return out;
}

namespace detail {

inline FpPoly xgcd_inverse(const FpPoly& a, const FpPoly& m) {
    const PrimeField& F = m.F;
    FpPoly r0 = m, r1 = a % m;
    FpPoly s0(F), s1 = FpPoly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divrem(r0, r1);
        FpPoly s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.degree() != 0) throw std::domain_error("xgcd_inverse: not invertible");
    return scale(s0, F.inv(r0.c[0]));
}

// Division polynomials in x alone: f_n = psi_n for odd n, psi_n / (2y) for even n.
class DivisionPolys {
public:
    explicit DivisionPolys(const Curve& E) : E_(E) {
        const PrimeField& F = E.F;
        u64 A = E.A, B = E.B;
        cubic_ = FpPoly(F, {B, A, 0, 1});
        cubic2x16_ = scale(cubic_ * cubic_, 16);
        memo_[0] = FpPoly(F);
        memo_[1] = FpPoly::constant(F, 1);
        memo_[2] = FpPoly::constant(F, 1);
        memo_[3] = FpPoly(F, {F.neg(F.mul(A, A)), F.mul(12, B), F.mul(6, A), 0, 3});
        u64 A2 = F.mul(A, A);
        memo_[4] = scale(FpPoly(F, {F.neg(F.add(F.mul(8, F.mul(B, B)), F.mul(A2, A))), F.neg(F.mul(4, F.mul(A, B))),
                                    F.neg(F.mul(5, A2)), F.mul(20, B), F.mul(5, A), 0, 1}),
                         2);
    }

    const FpPoly& cubic() const { return cubic_; }

    const FpPoly& operator()(u64 n) {
        auto it = memo_.find(n);
        if (it != memo_.end()) return it->second;
        FpPoly r;
        u64 k = n / 2;
        if (n % 2) {
            FpPoly a = (*this)(k + 2) * pow3(k);
            FpPoly b = (*this)(k - 1) * pow3(k + 1);
            if (k % 2 == 0)
                r = cubic2x16_ * a - b;
            else
                r = a - cubic2x16_ * b;
        } else {
            FpPoly t1 = (*this)(k + 2) * (*this)(k - 1) * (*this)(k - 1);
            FpPoly t2 = (*this)(k - 2) * (*this)(k + 1) * (*this)(k + 1);
            r = (*this)(k) * (t1 - t2);
        }
        return memo_[n] = r;
    }

private:
    FpPoly pow3(u64 k) {
        const FpPoly& f = (*this)(k);
        return f * f * f;
    }
    Curve E_;
    FpPoly cubic_, cubic2x16_;
    std::map<u64, FpPoly> memo_;
};

// Splits a product of distinct irreducibles of degree d.
inline void equal_degree_split(const FpPoly& g, int d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
    const PrimeField& F = g.F;
    if (g.degree() == d) {
        out.push_back(monic(g));
        return;
    }
    BigInt e = (ipow(to_big(F.modulus()), d) - 1) / 2;
    for (;;) {
        std::vector<u64> c(g.degree());
        for (auto& v : c) v = rng() % F.modulus();
        FpPoly h = powmod(FpPoly(F, c), e, g) - FpPoly::constant(F, 1);
        FpPoly f1 = gcd(g, h);
        if (f1.degree() > 0 && f1.degree() < g.degree()) {
            equal_degree_split(f1, d, rng, out);
            equal_degree_split(g / f1, d, rng, out);
            return;
        }
    }
}

// Irreducible factors of a squarefree polynomial.
inline std::vector<FpPoly> factor_squarefree(const FpPoly& f) {
    const PrimeField& F = f.F;
    std::vector<FpPoly> out;
    FpPoly g = monic(f);
    FpPoly X = FpPoly::x(F);
    FpPoly xq = X;
    auto rng = poly_rng(f);
    for (int d = 1; 2 * d <= g.degree(); ++d) {
        xq = powmod(xq, F.modulus(), g);
        FpPoly h = gcd(g, xq - X);
        if (h.degree() > 0) {
            equal_degree_split(h, d, rng, out);
            g = g / h;
            xq = xq % g;
        }
    }
    if (g.degree() > 0) out.push_back(monic(g));
    return out;
}

// h(a) in F_p[x]/(m)
inline FpPoly compose_mod(const FpPoly& h, const FpPoly& a, const FpPoly& m) {
    FpPoly r(m.F);
    for (std::size_t i = h.c.size(); i-- > 0;) r = (r * a + FpPoly::constant(m.F, h.c[i])) % m;
    return r;
}

}  // namespace detail

/// All F_p-rational cyclic subgroups of order l of E, as kernel polynomials.
inline std::vector<KernelSpec> ell_kernels(const Curve& E, u64 ell) {
    const PrimeField& F = E.F;
    std::vector<KernelSpec> out;
    if (ell == 2) {
        for (u64 x0 : roots(FpPoly(F, {E.B, E.A, 0, 1}))) out.push_back({2, FpPoly::linear(F, x0)});
        return out;
    }
    u64 p = F.modulus();
    std::mt19937_64 rng(p * 7919 ^ E.A ^ (E.B << 1) ^ ell);
    if (p > ell + 1 && p > 50) {
        u64 N = curve_order(E);
        u64 Nt = 2 * p + 2 - N;
        if (auto b = torsion_basis(E, ell, N, rng)) {
            auto [R, S] = *b;
            for (u64 k = 0; k <= ell; ++k) {
                Point G = k == ell ? R : add(E, S, mul(E, k, R));
                out.push_back({ell, from_roots(F, detail::half_multiples_x(E, G, ell))});
            }
            return out;
        }
        Curve T = twist(E);
        if (auto b = torsion_basis(T, ell, Nt, rng)) {
            u64 d = non_residue(F);
            u64 dinv = F.inv(d);
            auto [R, S] = *b;
            for (u64 k = 0; k <= ell; ++k) {
                Point G = k == ell ? R : add(T, S, mul(T, k, R));
                std::vector<u64> xs = detail::half_multiples_x(T, G, ell);
                for (u64& x : xs) x = F.mul(x, dinv);
                out.push_back({ell, from_roots(F, xs)});
            }
            return out;
        }
    }
    detail::DivisionPolys dp(E);
    FpPoly fl = dp(ell);
    std::vector<FpPoly> facs = detail::factor_squarefree(fl);
    u64 half = (ell - 1) / 2;
    std::vector<FpPoly> seen;
    for (const FpPoly& g : facs) {
        if (static_cast<u64>(g.degree()) > half) continue;
        FpPoly X = FpPoly::x(F) % g;
        std::vector<int> hit(facs.size(), 0);
        bool ok = true;
        for (u64 k = 1; k <= half && ok; ++k) {
            FpPoly xk;
            if (k == 1) {
                xk = X;
            } else {
                FpPoly num = dp(k - 1) * dp(k + 1) % g;
                FpPoly fk = dp(k) % g;
                FpPoly den = fk * fk % g;
                if (k % 2)
                    num = scale(num * dp.cubic() % g, 4);
                else
                    den = scale(den * dp.cubic() % g, 4);
                if (den.is_zero()) {
                    ok = false;
                    break;
                }
                xk = (X - num * detail::xgcd_inverse(den, g)) % g;
            }
            bool found = false;
            for (std::size_t i = 0; i < facs.size(); ++i) {
                if (detail::compose_mod(facs[i], xk, g).is_zero()) {
                    hit[i] = 1;
                    found = true;
                    break;
                }
            }
            ok = found;
        }
        if (!ok) continue;
        FpPoly ker = FpPoly::constant(F, 1);
        for (std::size_t i = 0; i < facs.size(); ++i) {
            if (hit[i]) ker = ker * facs[i];
        }
        if (static_cast<u64>(ker.degree()) != half) continue;
        if (std::find(seen.begin(), seen.end(), ker) != seen.end()) continue;
        seen.push_back(ker);
        out.push_back({ell, ker});
    }
    return out;
}

/// j-invariants of the curves l-isogenous to the curve with invariant j,
/// with multiplicity, ascending.
inline std::vector<u64> ell_neighbors(const PrimeField& F, u64 j, u64 ell) {
    Curve E = curve_from_j(F, j);
    std::vector<u64> out;
    for (const KernelSpec& K : ell_kernels(E, ell)) out.push_back(velu_image_j(E, K));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cmpoly

#endif
