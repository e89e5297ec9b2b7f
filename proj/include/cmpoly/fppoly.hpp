#ifndef CMPOLY_FPPOLY_HPP
#define CMPOLY_FPPOLY_HPP

#include <algorithm>
#include <cassert>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cmpoly/arith.hpp"

namespace cmpoly {

/// Arithmetic in Z/pZ for an odd prime p < 2^62.
class PrimeField {
public:
    PrimeField() = default;
    explicit PrimeField(u64 p) : p_(p), inv_(1.0L / static_cast<long double>(p)) {
        if (p < 3 || p >= (u64(1) << 62)) throw std::invalid_argument("PrimeField: modulus out of range");
    }

    u64 modulus() const { return p_; }

    u64 mul(u64 a, u64 b) const {
        u64 q = static_cast<u64>(static_cast<long double>(a) * static_cast<long double>(b) * inv_);
        i64 r = static_cast<i64>(a * b - q * p_);
        while (r < 0) r += static_cast<i64>(p_);
        while (r >= static_cast<i64>(p_)) r -= static_cast<i64>(p_);
        return static_cast<u64>(r);
    }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 neg(u64 a) const { return a ? p_ - a : 0; }
    u64 inv(u64 a) const {
        if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
        return invmod(a, p_);
    }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 from(i64 x) const { return mod_of(x, p_); }
    u64 from(const BigInt& x) const { return mod_of(x, p_); }
    // Representative in (-p/2, p/2].
    i64 signed_rep(u64 a) const { return a > p_ / 2 ? static_cast<i64>(a) - static_cast<i64>(p_) : static_cast<i64>(a); }

    // Replaces xs[i] by their inverses with one field inversion.
    void batch_inv(std::vector<u64>& xs) const {
        if (xs.empty()) return;
        std::vector<u64> pre(xs.size());
        u64 acc = 1;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            pre[i] = acc;
            acc = mul(acc, xs[i]);
        }
        u64 ia = inv(acc);
        for (std::size_t i = xs.size(); i-- > 0;) {
            u64 xi = xs[i];
            xs[i] = mul(ia, pre[i]);
            ia = mul(ia, xi);
        }
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
    u64 p_ = 0;
    long double inv_ = 0;
};

/// Dense univariate polynomial over F_p; c[i] is the coefficient of x^i and
/// the leading coefficient is nonzero (the zero polynomial is empty).
struct FpPoly {
    PrimeField F;
    std::vector<u64> c;

    FpPoly() = default;
    explicit FpPoly(const PrimeField& f) : F(f) {}
    FpPoly(const PrimeField& f, std::vector<u64> coeffs) : F(f), c(std::move(coeffs)) { trim(); }

    static FpPoly constant(const PrimeField& f, u64 a) { return FpPoly(f, {a % f.modulus()}); }
    static FpPoly x(const PrimeField& f) { return FpPoly(f, {0, 1}); }
    static FpPoly linear(const PrimeField& f, u64 root) { return FpPoly(f, {f.neg(root % f.modulus()), 1}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    u64 lead() const { return c.empty() ? 0 : c.back(); }
    u64 coeff(std::size_t i) const { return i < c.size() ? c[i] : 0; }

    u64 operator()(u64 x) const {
        u64 r = 0;
        for (std::size_t i = c.size(); i-- > 0;) r = F.add(F.mul(r, x), c[i]);
        return r;
    }

    bool operator==(const FpPoly& o) const { return F == o.F && c == o.c; }
};

inline FpPoly operator+(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F.add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

inline FpPoly operator-(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.F);
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = a.F.sub(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
}

inline FpPoly scale(const FpPoly& a, u64 s) {
    FpPoly r(a.F);
    r.c.resize(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.F.mul(a.c[i], s);
    r.trim();
    return r;
}

namespace detail {

inline void mul_school(const PrimeField& F, const u64* a, std::size_t na, const u64* b, std::size_t nb, u64* out) {
    for (std::size_t i = 0; i < na; ++i) {
        u64 ai = a[i];
        if (!ai) continue;
        for (std::size_t j = 0; j < nb; ++j) out[i + j] = F.add(out[i + j], F.mul(ai, b[j]));
    }
}

// out += a*b with na == nb == n; out has room for 2n-1 entries.
inline void mul_kara(const PrimeField& F, const u64* a, const u64* b, std::size_t n, u64* out) {
    if (n <= 40) {
        mul_school(F, a, n, b, n, out);
        return;
    }
    std::size_t h = n / 2, k = n - h;
    std::vector<u64> z0(2 * h), z2(2 * k), sa(k), sb(k), z1(2 * k);
    mul_kara(F, a, b, h, z0.data());
    mul_kara(F, a + h, b + h, k, z2.data());
    for (std::size_t i = 0; i < k; ++i) {
        sa[i] = F.add(a[h + i], i < h ? a[i] : 0);
        sb[i] = F.add(b[h + i], i < h ? b[i] : 0);
    }
    mul_kara(F, sa.data(), sb.data(), k, z1.data());
    for (std::size_t i = 0; i + 1 < 2 * h; ++i) z1[i] = F.sub(z1[i], z0[i]);
    for (std::size_t i = 0; i + 1 < 2 * k; ++i) z1[i] = F.sub(z1[i], z2[i]);
    for (std::size_t i = 0; i + 1 < 2 * h; ++i) out[i] = F.add(out[i], z0[i]);
    for (std::size_t i = 0; i + 1 < 2 * k; ++i) out[h + i] = F.add(out[h + i], z1[i]);
    for (std::size_t i = 0; i + 1 < 2 * k; ++i) out[2 * h + i] = F.add(out[2 * h + i], z2[i]);
}

}  // namespace detail

inline FpPoly operator*(const FpPoly& a, const FpPoly& b) {
    FpPoly r(a.F);
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    std::size_t n = std::min(a.c.size(), b.c.size());
    if (n <= 40) {
        detail::mul_school(a.F, a.c.data(), a.c.size(), b.c.data(), b.c.size(), r.c.data());
    } else {
        const FpPoly& big = a.c.size() >= b.c.size() ? a : b;
        const FpPoly& small = a.c.size() >= b.c.size() ? b : a;
        std::vector<u64> tmp(2 * n);
        for (std::size_t off = 0; off < big.c.size(); off += n) {
            std::size_t len = std::min(n, big.c.size() - off);
            std::vector<u64> chunk(n, 0);
            std::copy(big.c.begin() + off, big.c.begin() + off + len, chunk.begin());
            std::fill(tmp.begin(), tmp.end(), 0);
            detail::mul_kara(a.F, chunk.data(), small.c.data(), n, tmp.data());
            for (std::size_t i = 0; i + 1 < 2 * n && off + i < r.c.size(); ++i) r.c[off + i] = a.F.add(r.c[off + i], tmp[i]);
        }
    }
    r.trim();
    return r;
}

inline FpPoly monic(const FpPoly& a) {
    if (a.is_zero()) return a;
    return scale(a, a.F.inv(a.lead()));
}

inline std::pair<FpPoly, FpPoly> divrem(const FpPoly& a, const FpPoly& b) {
    if (b.is_zero()) throw std::domain_error("FpPoly: division by zero");
    const PrimeField& F = a.F;
    FpPoly q(F), r = a;
    if (a.degree() < b.degree()) return {q, r};
    u64 il = F.inv(b.lead());
    std::size_t db = b.c.size() - 1;
    q.c.assign(a.c.size() - db, 0);
    for (std::size_t i = r.c.size(); i-- > db;) {
        u64 t = F.mul(r.c[i], il);
        q.c[i - db] = t;
        if (!t) continue;
        u64 nt = F.neg(t);
        for (std::size_t j = 0; j <= db; ++j) r.c[i - db + j] = F.add(r.c[i - db + j], F.mul(nt, b.c[j]));
    }
    r.c.resize(db);
    r.trim();
    q.trim();
    return {q, r};
}

inline FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divrem(a, b).second; }
inline FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divrem(a, b).first; }

// Monic gcd (zero when both inputs are zero).
inline FpPoly gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

inline FpPoly derivative(const FpPoly& a) {
    FpPoly r(a.F);
    if (a.c.size() <= 1) return r;
    r.c.resize(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = a.F.mul(a.c[i], i % a.F.modulus());
    r.trim();
    return r;
}

// g(Y) = f(Y + s)
inline FpPoly taylor_shift(const FpPoly& f, u64 s) {
    const PrimeField& F = f.F;
    std::vector<u64> g(f.c.size(), 0);
    std::size_t len = 0;
    for (std::size_t k = f.c.size(); k-- > 0;) {
        // g <- g * (Y + s) + f_k
        if (len) {
            g[len] = g[len - 1];
            for (std::size_t i = len - 1; i > 0; --i) g[i] = F.add(F.mul(g[i], s), g[i - 1]);
            g[0] = F.mul(g[0], s);
        }
        ++len;
        g[0] = F.add(g[0], f.c[k]);
    }
    return FpPoly(F, std::move(g));
}

inline FpPoly powmod(FpPoly base, const BigInt& e, const FpPoly& mod) {
    FpPoly r = FpPoly::constant(base.F, 1) % mod;
    base = base % mod;
    for (std::size_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
        r = (r * r) % mod;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * base) % mod;
    }
    if (e == 0) return FpPoly::constant(base.F, 1) % mod;
    return r;
}

inline FpPoly powmod(const FpPoly& base, u64 e, const FpPoly& mod) { return powmod(base, to_big(e), mod); }

inline FpPoly from_roots(const PrimeField& F, const std::vector<u64>& roots) {
    std::vector<u64> c{1};
    c.reserve(roots.size() + 1);
    for (u64 r : roots) {
        u64 nr = F.neg(r);
        c.push_back(0);
        for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = F.add(c[i - 1], F.mul(c[i], nr));
        c[0] = F.mul(c[0], nr);
    }
    return FpPoly(F, std::move(c));
}

// Divides f by (x - r) in place, returning the remainder.
inline u64 deflate(FpPoly& f, u64 r) {
    const PrimeField& F = f.F;
    if (f.is_zero()) return 0;
    std::size_t n = f.c.size();
    std::vector<u64> q(n - 1);
    u64 acc = 0;
    for (std::size_t i = n; i-- > 0;) {
        acc = F.add(F.mul(acc, r), f.c[i]);
        if (i > 0) q[i - 1] = acc;
    }
    f.c = std::move(q);
    f.trim();
    return acc;
}

namespace detail {

inline void split_roots(const FpPoly& g, std::mt19937_64& rng, std::vector<u64>& out) {
    const PrimeField& F = g.F;
    u64 p = F.modulus();
    int d = g.degree();
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(F.mul(F.neg(g.c[0]), F.inv(g.c[1])));
        return;
    }
    if (d == 2) {
        FpPoly m = monic(g);
        u64 b = m.c[1], c0 = m.c[0];
        u64 disc = F.sub(F.mul(b, b), F.mul(4 % p, c0));
        auto s = sqrt_mod(disc, p);
        if (s) {
            u64 i2 = F.inv(2);
            out.push_back(F.mul(F.sub(*s, b), i2));
            out.push_back(F.mul(F.sub(F.neg(*s), b), i2));
            return;
        }
    }
    BigInt half = (to_big(p) - 1) / 2;
    for (;;) {
        u64 a = rng() % p;
        FpPoly h = powmod(FpPoly(F, {a, 1}), half, g);
        h = h - FpPoly::constant(F, 1);
        FpPoly f1 = gcd(g, h);
        if (f1.degree() > 0 && f1.degree() < d) {
            split_roots(f1, rng, out);
            split_roots(g / f1, rng, out);
            return;
        }
    }
}

inline std::mt19937_64 poly_rng(const FpPoly& f) {
    u64 s = f.F.modulus() * 0x9e3779b97f4a7c15ULL ^ static_cast<u64>(f.c.size());
    for (std::size_t i = 0; i < std::min<std::size_t>(f.c.size(), 4); ++i) s = s * 1000003ULL ^ f.c[i];
    return std::mt19937_64(s);
}

}  // namespace detail

// Distinct roots of f in F_p, ascending.  With assume_split the caller
// guarantees f is squarefree and splits completely.
inline std::vector<u64> roots(const FpPoly& f, bool assume_split = false) {
    std::vector<u64> out;
    if (f.degree() <= 0) return out;
    FpPoly g = monic(f);
    if (!assume_split) {
        FpPoly xp = powmod(FpPoly::x(f.F), f.F.modulus(), g);
        g = gcd(g, xp - FpPoly::x(f.F));
    }
    auto rng = detail::poly_rng(g);
    if (g.degree() >= 1 && g.c[0] == 0) {
        out.push_back(0);
        deflate(g, 0);
    }
    detail::split_roots(g, rng, out);
    std::sort(out.begin(), out.end());
    return out;
}

// Roots with multiplicities.
inline std::vector<std::pair<u64, int>> roots_with_multiplicity(const FpPoly& f) {
    std::vector<std::pair<u64, int>> out;
    for (u64 r : roots(f)) {
        FpPoly g = f;
        int mult = 0;
        for (;;) {
            FpPoly h = g;
            if (deflate(h, r) != 0) break;
            g = std::move(h);
            ++mult;
        }
        out.emplace_back(r, mult);
    }
    return out;
}

// Roots listed with multiplicity, ascending.
inline std::vector<u64> roots_split(const FpPoly& f) {
    std::vector<u64> out;
    for (auto [r, m] : roots_with_multiplicity(f)) out.insert(out.end(), m, r);
    return out;
}

inline std::vector<u64> multipoint_eval(const FpPoly& f, const std::vector<u64>& xs) {
    std::vector<u64> out;
    out.reserve(xs.size());
    for (u64 x : xs) out.push_back(f(x));
    return out;
}

/// Lagrange interpolation and barycentric evaluation on a fixed node set.
class Interpolator {
public:
    Interpolator(const PrimeField& F, std::vector<u64> nodes) : F_(F), nodes_(std::move(nodes)), M_(from_roots(F, nodes_)) {
        w_.resize(nodes_.size());
        FpPoly dM = derivative(M_);
        for (std::size_t i = 0; i < nodes_.size(); ++i) w_[i] = dM(nodes_[i]);
        for (u64 v : w_) {
            if (v == 0) throw std::invalid_argument("Interpolator: repeated node");
        }
        F_.batch_inv(w_);
    }

    const std::vector<u64>& nodes() const { return nodes_; }
    const std::vector<u64>& weights() const { return w_; }

    FpPoly interpolate(const std::vector<u64>& values) const {
        std::size_t n = nodes_.size();
        std::vector<u64> acc(n, 0), q(n);
        for (std::size_t i = 0; i < n; ++i) {
            u64 u = F_.mul(values[i], w_[i]);
            if (!u) continue;
            // q = M / (x - x_i)
            u64 r = 0;
            for (std::size_t k = n + 1; k-- > 1;) {
                r = F_.add(F_.mul(r, nodes_[i]), M_.c[k]);
                q[k - 1] = r;
            }
            for (std::size_t k = 0; k < n; ++k) acc[k] = F_.add(acc[k], F_.mul(u, q[k]));
        }
        return FpPoly(F_, std::move(acc));
    }

    struct EvalPoint {
        std::vector<u64> u1, u2;  // w_i/(x-x_i), w_i/(x-x_i)^2
        u64 M = 0, dM = 0;
        bool on_node = false;
    };

    // Precomputes data for evaluating interpolants and their derivatives at x.
    EvalPoint prepare(u64 x) const {
        EvalPoint e;
        std::size_t n = nodes_.size();
        std::vector<u64> d(n);
        for (std::size_t i = 0; i < n; ++i) {
            d[i] = F_.sub(x, nodes_[i]);
            if (!d[i]) {
                e.on_node = true;
                return e;
            }
        }
        e.M = M_(x);
        F_.batch_inv(d);
        u64 s = 0;
        e.u1.resize(n);
        e.u2.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            s = F_.add(s, d[i]);
            e.u1[i] = F_.mul(w_[i], d[i]);
            e.u2[i] = F_.mul(e.u1[i], d[i]);
        }
        e.dM = F_.mul(e.M, s);
        return e;
    }

    // Value and derivative at a prepared point of the interpolant of
    // column `col` in a row-major table with `stride` columns.
    std::pair<u64, u64> eval(const EvalPoint& e, const std::vector<u64>& table, std::size_t stride, std::size_t col) const {
        if (e.on_node) throw std::invalid_argument("Interpolator: evaluation at a node");
        u64 a1 = 0, a2 = 0;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            u64 v = table[i * stride + col];
            a1 = F_.add(a1, F_.mul(v, e.u1[i]));
            a2 = F_.add(a2, F_.mul(v, e.u2[i]));
        }
        u64 val = F_.mul(e.M, a1);
        u64 der = F_.sub(F_.mul(e.dM, a1), F_.mul(e.M, a2));
        return {val, der};
    }

private:
    PrimeField F_;
    std::vector<u64> nodes_;
    FpPoly M_;
    std::vector<u64> w_;
};

inline FpPoly interpolate(const PrimeField& F, const std::vector<u64>& xs, const std::vector<u64>& ys) {
    return Interpolator(F, xs).interpolate(ys);
}

}  // namespace cmpoly

#endif
