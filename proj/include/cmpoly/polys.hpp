#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "cmpoly/fppoly.hpp"

namespace cmpoly {

/// Univariate polynomial with rational coefficients, c[k] for x^k.
struct RatPoly {
    std::vector<BigRat> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    const BigRat& lead() const { return c.back(); }
    BigRat coeff(std::size_t k) const { return k < c.size() ? c[k] : BigRat(0); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool operator==(const RatPoly& o) const { return c == o.c; }

    bool is_integral() const {
        for (auto& q : c) {
            if (q.get_den() != 1) return false;
        }
        return true;
    }
    BigRat trace() const { return degree() >= 1 ? BigRat(-c[c.size() - 2] / lead()) : BigRat(0); }
    BigInt common_denominator() const {
        BigInt d = 1;
        for (auto& q : c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
        return d;
    }
    // Log of the largest absolute numerator and denominator.
    double height() const {
        double h = 0;
        for (auto& q : c) {
            if (q == 0) continue;
            h = std::max(h, std::max(log_abs(q.get_num()), log_abs(q.get_den())));
        }
        return h;
    }

    FpPoly reduce(const PrimeField& F) const {
        std::vector<u64> v(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            u64 den = F.from(c[k].get_den());
            if (!den) throw std::domain_error("RatPoly: denominator vanishes mod p");
            v[k] = F.mul(F.from(c[k].get_num()), F.inv(den));
        }
        return FpPoly(F, v);
    }

    static RatPoly from_integers(const std::vector<BigInt>& v) {
        RatPoly r;
        for (auto& x : v) r.c.emplace_back(x);
        r.trim();
        return r;
    }
};

inline RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

/// Polynomial over Q(sqrt D) with coefficients (u + v sqrt D)/2.
struct KQuadPoly {
    i64 D = 0;
    std::vector<BigInt> u, v;

    int degree() const { return static_cast<int>(u.size()) - 1; }

    // Image under sqrt D -> s in F_p.
    FpPoly reduce(const PrimeField& F, u64 s) const {
        u64 half = F.inv(2);
        std::vector<u64> c(u.size());
        for (std::size_t k = 0; k < u.size(); ++k) c[k] = F.mul(F.add(F.from(u[k]), F.mul(F.from(v[k]), s)), half);
        return FpPoly(F, c);
    }
    bool operator==(const KQuadPoly& o) const { return D == o.D && u == o.u && v == o.v; }
};

/// Dense bivariate polynomial sum c(i,j) X^i Y^j over Z.
struct BiPoly {
    int dx = 0, dy = 0;
    std::vector<BigInt> c;

    BiPoly() = default;
    BiPoly(int dx_, int dy_) : dx(dx_), dy(dy_), c(static_cast<std::size_t>(dx_ + 1) * (dy_ + 1)) {}

    BigInt& at(int i, int j) { return c[static_cast<std::size_t>(i) * (dy + 1) + j]; }
    const BigInt& at(int i, int j) const { return c[static_cast<std::size_t>(i) * (dy + 1) + j]; }

    bool symmetric() const {
        if (dx != dy) return false;
        for (int i = 0; i <= dx; ++i)
            for (int j = 0; j < i; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }
    double height() const {
        double h = 0;
        for (auto& v : c)
            if (v != 0) h = std::max(h, log_abs(v));
        return h;
    }
    // Actual degrees, ignoring zero rows and columns.
    int degree_x() const {
        for (int i = dx; i >= 0; --i)
            for (int j = 0; j <= dy; ++j)
                if (at(i, j) != 0) return i;
        return -1;
    }
    int degree_y() const {
        for (int j = dy; j >= 0; --j)
            for (int i = 0; i <= dx; ++i)
                if (at(i, j) != 0) return j;
        return -1;
    }

    // Polynomial in X obtained by fixing Y = y mod p.
    FpPoly eval_y(const PrimeField& F, u64 y) const {
        std::vector<u64> out(dx + 1);
        for (int i = 0; i <= dx; ++i) {
            u64 acc = 0;
            for (int j = dy; j >= 0; --j) acc = F.add(F.mul(acc, y), F.from(at(i, j)));
            out[i] = acc;
        }
        return FpPoly(F, out);
    }
    bool operator==(const BiPoly& o) const { return dx == o.dx && dy == o.dy && c == o.c; }
};

/// Dense bivariate polynomial over F_p.
struct BiPolyModP {
    PrimeField F;
    int dx = 0, dy = 0;
    std::vector<u64> c;

    BiPolyModP() = default;
    BiPolyModP(const PrimeField& f, int dx_, int dy_) : F(f), dx(dx_), dy(dy_), c(static_cast<std::size_t>(dx_ + 1) * (dy_ + 1)) {}
    BiPolyModP(const BiPoly& P, const PrimeField& f) : BiPolyModP(f, P.dx, P.dy) {
        for (std::size_t k = 0; k < c.size(); ++k) c[k] = F.from(P.c[k]);
    }

    u64& at(int i, int j) { return c[static_cast<std::size_t>(i) * (dy + 1) + j]; }
    u64 at(int i, int j) const { return c[static_cast<std::size_t>(i) * (dy + 1) + j]; }

    FpPoly eval_y(u64 y) const {
        std::vector<u64> out(dx + 1);
        for (int i = 0; i <= dx; ++i) {
            u64 acc = 0;
            for (int j = dy; j >= 0; --j) acc = F.add(F.mul(acc, y), at(i, j));
            out[i] = acc;
        }
        return FpPoly(F, out);
    }
    FpPoly eval_x(u64 x) const {
        std::vector<u64> out(dy + 1);
        for (int j = 0; j <= dy; ++j) {
            u64 acc = 0;
            for (int i = dx; i >= 0; --i) acc = F.add(F.mul(acc, x), at(i, j));
            out[j] = acc;
        }
        return FpPoly(F, out);
    }
    // d/dX evaluated at X = x, as a polynomial in Y.
    FpPoly dx_at(u64 x) const {
        std::vector<u64> out(dy + 1);
        for (int j = 0; j <= dy; ++j) {
            u64 acc = 0;
            for (int i = dx; i >= 1; --i) acc = F.add(F.mul(acc, x), F.mul(at(i, j), static_cast<u64>(i)));
            out[j] = acc;
        }
        return FpPoly(F, out);
    }
    bool symmetric() const {
        if (dx != dy) return false;
        for (int i = 0; i <= dx; ++i)
            for (int j = 0; j < i; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }
    bool operator==(const BiPolyModP& o) const { return F == o.F && dx == o.dx && dy == o.dy && c == o.c; }
};

// ---- text formats ----

inline void write_poly(std::ostream& os, const RatPoly& f, const std::string& name, const std::string& var = "x") {
    os << "poly " << name << " deg=" << f.degree() << " var=" << var << "\n";
    for (int k = f.degree(); k >= 0; --k) os << k << ": " << to_string(f.c[k]) << "\n";
}

inline RatPoly read_poly(std::istream& is, std::string* name = nullptr) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("poly ", 0) != 0) throw Error(ErrorKind::BadInput, "expected poly header");
    std::istringstream hs(line);
    std::string tag, nm, degs;
    hs >> tag >> nm >> degs;
    if (name) *name = nm;
    int deg = std::stoi(degs.substr(4));
    RatPoly f;
    f.c.assign(deg + 1, BigRat(0));
    for (int seen = 0; seen <= deg && std::getline(is, line);) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        int k = std::stoi(line.substr(0, colon));
        std::string val = line.substr(colon + 1);
        val.erase(0, val.find_first_not_of(' '));
        BigRat q(val);
        q.canonicalize();
        f.c.at(k) = q;
        ++seen;
    }
    return f;
}

inline void write_bipoly(std::ostream& os, const BiPoly& P, u64 m) {
    os << "bipoly m=" << m << "\n";
    for (int i = P.dx; i >= 0; --i)
        for (int j = i; j >= 0; --j)
            if (P.at(i, j) != 0) os << i << " " << j << ": " << P.at(i, j).get_str() << "\n";
}

inline void write_bipoly_mod(std::ostream& os, const BiPolyModP& P, u64 m) {
    os << "bipoly m=" << m << " mod=" << P.F.modulus() << "\n";
    for (int i = P.dx; i >= 0; --i)
        for (int j = i; j >= 0; --j)
            if (P.at(i, j) != 0) os << i << " " << j << ": " << P.at(i, j) << "\n";
}

// Reads the symmetric format; the degree is psi(m).
inline BiPoly read_bipoly(std::istream& is, u64* m_out = nullptr) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("bipoly m=", 0) != 0) throw Error(ErrorKind::BadInput, "expected bipoly header");
    u64 m = std::stoull(line.substr(9));
    if (m_out) *m_out = m;
    std::vector<std::tuple<int, int, BigInt>> entries;
    int deg = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i, j;
        std::string colon, val;
        ls >> i >> j >> colon;
        if (colon.back() == ':') colon.pop_back();
        ls >> val;
        if (!colon.empty()) val = colon;
        entries.emplace_back(i, j, BigInt(val));
        deg = std::max(deg, i);
    }
    BiPoly P(deg, deg);
    for (auto& [i, j, v] : entries) P.at(i, j) = P.at(j, i) = v;
    return P;
}

// General (non-symmetric) layout used for cached auxiliary polynomials.
inline void write_bipoly_general(std::ostream& os, const BiPoly& P) {
    os << "bipoly dx=" << P.dx << " dy=" << P.dy << "\n";
    for (int i = P.dx; i >= 0; --i)
        for (int j = P.dy; j >= 0; --j)
            if (P.at(i, j) != 0) os << i << " " << j << ": " << P.at(i, j).get_str() << "\n";
}

inline BiPoly read_bipoly_general(std::istream& is) {
    std::string line, tag, a, b;
    std::getline(is, line);
    std::istringstream hs(line);
    hs >> tag >> a >> b;
    if (tag != "bipoly" || a.rfind("dx=", 0) != 0) throw Error(ErrorKind::BadInput, "expected general bipoly header");
    BiPoly P(std::stoi(a.substr(3)), std::stoi(b.substr(3)));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i, j;
        std::string colon, val;
        ls >> i >> j >> colon >> val;
        P.at(i, j) = BigInt(val);
    }
    return P;
}

inline void write_kpoly(std::ostream& os, const KQuadPoly& f) {
    os << "kpoly D=" << f.D << " deg=" << f.degree() << "\n";
    for (int k = f.degree(); k >= 0; --k) os << k << ": " << f.u[k].get_str() << " " << f.v[k].get_str() << "\n";
}

inline KQuadPoly read_kpoly(std::istream& is) {
    std::string line, tag, d, deg;
    std::getline(is, line);
    std::istringstream hs(line);
    hs >> tag >> d >> deg;
    if (tag != "kpoly") throw Error(ErrorKind::BadInput, "expected kpoly header");
    KQuadPoly f;
    f.D = std::stoll(d.substr(2));
    int n = std::stoi(deg.substr(4));
    f.u.assign(n + 1, 0);
    f.v.assign(n + 1, 0);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int k;
        std::string colon, u, v;
        ls >> k >> colon >> u >> v;
        f.u.at(k) = BigInt(u);
        f.v.at(k) = BigInt(v);
    }
    return f;
}

}  // namespace cmpoly
