#pragma once

#include <cmath>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cmpoly/analytic.hpp"
#include "cmpoly/modpoly.hpp"
#include "cmpoly/store.hpp"

namespace cmpoly {

/// Level of the modular polynomial whose diagonal vanishes at j(O_D).
inline u64 masser_level(i64 D) {
    if (D >= -4 || !is_discriminant(D)) throw Error(ErrorKind::BadInput, "discriminant must be below -4");
    u64 a = static_cast<u64>(-D);
    return a % 4 == 0 ? a / 4 : a;
}

inline void require_nonspecial(i64 D) {
    masser_level(D);
    if (is_special_discriminant(D)) throw Error(ErrorKind::SpecialDiscriminant, "discriminant " + std::to_string(D) + " is -3 times a square");
}

struct BetaTriple {
    u64 b01 = 0, b11 = 0, b02 = 0;
};

/// Taylor coefficients at (j, j) of Phi(j, Y) and dPhi/dX(j, Y).
inline BetaTriple masser_betas(const FpPoly& phi_j, const FpPoly& dphi_j, u64 j) {
    FpPoly s = taylor_shift(phi_j, j);
    if (s.coeff(0) != 0) throw PrimeRejected("j is not a root of Phi(j, Y)");
    FpPoly d = taylor_shift(dphi_j, j);
    return {s.coeff(1), d.coeff(1), s.coeff(2)};
}

inline BetaTriple masser_betas(const BiPolyModP& Phi, u64 j) { return masser_betas(Phi.eval_x(j), Phi.dx_at(j), j); }

inline u64 gamma_mod_p(const PrimeField& F, const BetaTriple& b) {
    if (b.b01 == 0) throw PrimeRejected("beta01 vanishes");
    return F.mul(F.sub(F.add(b.b02, b.b02), b.b11), F.inv(b.b01));
}

/// log of exp(pi sqrt|D|) + 2114.567
inline double bound_M1(i64 D) {
    double x = M_PI * std::sqrt(static_cast<double>(-D));
    return x + std::log1p(2114.567 * std::exp(-x));
}

/// Bound on log of the height of delta * H_D(gamma; x), delta included.
inline double bound_Bgamma(i64 D) {
    u64 m = masser_level(D);
    double ps = static_cast<double>(psi(m));
    double h = class_number(D);
    return (h + 1) * (4 * std::log(ps + 1) + 2 * ps * bound_M1(D) + height_bound_phi(m) + 2);
}

/// Everything shared by the primes of one gamma computation.
struct GammaContext {
    i64 D = 0;
    u64 m = 0;
    int h = 0;
    RatPoly H;
    PhiContext phi;
};

inline GammaContext make_gamma_context(i64 D) {
    require_nonspecial(D);
    GammaContext g;
    g.D = D;
    g.m = masser_level(D);
    g.h = class_number(D);
    g.H = store::hilbert(D);
    g.phi = make_phi_context(g.m, D);
    return g;
}

/// Roots j_k of H_D mod p with their gamma values and beta01.
struct GammaValues {
    PrimeField F;
    std::vector<u64> j, gamma, b01;
};

inline GammaValues gamma_values_mod_p(const GammaContext& g, const PrimeEntry& e) {
    PrimeField F(e.p);
    GammaValues out{F, roots(g.H.reduce(F)), {}, {}};
    if (static_cast<int>(out.j.size()) != g.h) throw PrimeRejected("H_D does not split");
    auto record = [&](const BetaTriple& b) {
        out.b01.push_back(b.b01);
        out.gamma.push_back(gamma_mod_p(F, b));
    };
    if (g.m == 2) {
        BiPolyModP Phi(phi2(), F);
        for (u64 j : out.j) record(masser_betas(Phi, j));
        return out;
    }
    PhiRows rows = phi_rows_mod_p(g.phi, e);
    Interpolator I(F, rows.nodes);
    std::size_t n = rows.stride;
    std::vector<u64> val(n), der(n);
    for (u64 j : out.j) {
        auto ep = I.prepare(j);
        if (ep.on_node) throw PrimeRejected("H_D root coincides with an interpolation node");
        for (std::size_t c = 0; c < n; ++c) std::tie(val[c], der[c]) = I.eval(ep, rows.table, n, c);
        record(masser_betas(FpPoly(F, val), FpPoly(F, der), j));
    }
    return out;
}

namespace detail {

inline RatPoly divide_by_lead(const std::vector<BigInt>& f) {
    RatPoly out;
    for (const BigInt& c : f) {
        BigRat q(c, f.back());
        q.canonicalize();
        out.c.push_back(q);
    }
    return out;
}

}  // namespace detail

/// H_D(gamma; x) = prod (x - gamma(alpha_Q)).
inline RatPoly class_poly_gamma(i64 D, LiftStats* stats = nullptr, std::function<bool(u64)> accept = {}) {
    GammaContext g = make_gamma_context(D);
    PrimeStream stream(g.m, g.phi.disc, std::move(accept), settings().seed);
    LiftStats local;
    std::vector<BigInt> f = crt_lift(
        stream, bound_Bgamma(D),
        [&](const PrimeEntry& e) {
            GammaValues gv = gamma_values_mod_p(g, e);
            const PrimeField& F = gv.F;
            u64 delta = 1;
            for (u64 b : gv.b01) delta = F.mul(delta, b);
            return scale(from_roots(F, gv.gamma), delta).c;
        },
        local);
    if (f.back() == 0) throw Error(ErrorKind::RoundingFailure, "delta lifted to zero");
    RatPoly H = detail::divide_by_lead(f);
    for (const BigInt& c : f) local.height = std::max(local.height, log_abs(c));
    if (stats) *stats = local;
    return H;
}

// ---- good modular functions ----

/// F = sum_n A_n(j) gamma^n with A_n = num_n / den_n, and c1 |D|^(c2 h) H_D(F; x)
/// integral.
struct GoodFunctionSpec {
    struct Term {
        int n = 0;
        std::vector<BigInt> num{1}, den{1};
    };
    std::vector<Term> terms;
    BigInt c1 = 1;
    int c2 = 1;
};

/// Zagier's K = j(j - 1728) gamma + 2j - 1728.
inline GoodFunctionSpec zagier_K_spec() {
    GoodFunctionSpec s;
    s.terms.push_back({0, {BigInt(-1728), BigInt(2)}, {BigInt(1)}});
    s.terms.push_back({1, {BigInt(0), BigInt(-1728), BigInt(1)}, {BigInt(1)}});
    return s;
}

namespace detail {

inline std::vector<BigInt> parse_coeff_list(const std::string& s) {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.emplace_back(item);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorKind::BadInput, "bad coefficient '" + item + "'");
        }
    }
    if (out.empty()) throw Error(ErrorKind::BadInput, "empty coefficient list");
    return out;
}

inline bool all_zero(const std::vector<BigInt>& v) {
    for (auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace detail

/// Lines `A <n>: num=<c0,c1,...> den=<c0,...>` and `c1=<int> c2=<int>`;
/// `#` starts a comment.
inline GoodFunctionSpec read_good_spec(std::istream& is) {
    GoodFunctionSpec s;
    std::string line;
    while (std::getline(is, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "A") {
            GoodFunctionSpec::Term t;
            std::string idx;
            ls >> idx;
            if (idx.empty() || idx.back() != ':') throw Error(ErrorKind::BadInput, "expected 'A <n>:'");
            t.n = std::stoi(idx.substr(0, idx.size() - 1));
            if (t.n < 0) throw Error(ErrorKind::BadInput, "negative gamma exponent");
            while (ls >> tok) {
                if (tok.rfind("num=", 0) == 0)
                    t.num = detail::parse_coeff_list(tok.substr(4));
                else if (tok.rfind("den=", 0) == 0)
                    t.den = detail::parse_coeff_list(tok.substr(4));
                else
                    throw Error(ErrorKind::BadInput, "unknown field '" + tok + "'");
            }
            if (detail::all_zero(t.den)) throw Error(ErrorKind::BadInput, "zero denominator");
            s.terms.push_back(std::move(t));
        } else {
            do {
                if (tok.rfind("c1=", 0) == 0)
                    s.c1 = BigInt(tok.substr(3));
                else if (tok.rfind("c2=", 0) == 0)
                    s.c2 = std::stoi(tok.substr(3));
                else
                    throw Error(ErrorKind::BadInput, "unknown token '" + tok + "'");
            } while (ls >> tok);
        }
    }
    if (s.terms.empty()) throw Error(ErrorKind::BadInput, "spec has no terms");
    if (s.c1 < 1 || s.c2 < 1) throw Error(ErrorKind::BadInput, "c1 and c2 must be positive");
    return s;
}

inline void write_good_spec(std::ostream& os, const GoodFunctionSpec& s) {
    auto list = [](const std::vector<BigInt>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) r += (i ? "," : "") + v[i].get_str();
        return r;
    };
    for (auto& t : s.terms) os << "A " << t.n << ": num=" << list(t.num) << " den=" << list(t.den) << "\n";
    os << "c1=" << s.c1.get_str() << " c2=" << s.c2 << "\n";
}

/// Height surrogate for c1 |D|^(c2 h) H_D(F; x), before the safety factor.
inline double bound_BF(const GoodFunctionSpec& s, i64 D) {
    double h = class_number(D);
    int maxdeg = 0;
    double norms = 0;
    for (auto& t : s.terms) {
        maxdeg = std::max<int>(maxdeg, static_cast<int>(std::max(t.num.size(), t.den.size())) - 1 + t.n);
        BigInt mx = 0;
        for (auto& c : t.num) mx = std::max<BigInt>(mx, abs(c));
        for (auto& c : t.den) mx = std::max<BigInt>(mx, abs(c));
        norms += std::log1p(std::exp(log_abs(mx)));
    }
    return log_abs(s.c1) + s.c2 * h * std::log(static_cast<double>(-D)) + analytic::bound_Bj(D) * (1 + maxdeg) + h * norms;
}

namespace detail {

inline u64 eval_int_poly(const PrimeField& F, const std::vector<BigInt>& c, u64 x) {
    u64 r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = F.add(F.mul(r, x), F.from(c[i]));
    return r;
}

}  // namespace detail

/// F(alpha_Q) mod p for each root j_k of H_D mod p.
inline std::vector<u64> good_values_mod_p(const GoodFunctionSpec& s, const GammaValues& gv) {
    const PrimeField& F = gv.F;
    std::vector<u64> vals;
    for (std::size_t k = 0; k < gv.j.size(); ++k) {
        u64 acc = 0;
        for (auto& t : s.terms) {
            u64 den = detail::eval_int_poly(F, t.den, gv.j[k]);
            if (!den) throw PrimeRejected("denominator vanishes at a root");
            u64 a = F.mul(detail::eval_int_poly(F, t.num, gv.j[k]), F.inv(den));
            acc = F.add(acc, F.mul(a, F.pow(gv.gamma[k], static_cast<u64>(t.n))));
        }
        vals.push_back(acc);
    }
    return vals;
}

/// H_D(F; x) for a good function F.
inline RatPoly class_poly_good(const GoodFunctionSpec& s, i64 D, LiftStats* stats = nullptr, std::function<bool(u64)> accept = {}) {
    GammaContext g = make_gamma_context(D);
    BigInt scale_big = s.c1 * ipow(BigInt(-D), static_cast<unsigned long>(s.c2) * g.h);
    auto filter = [&, accept](u64 p) { return mod_of(s.c1, p) != 0 && (accept ? accept(p) : true); };
    PrimeStream stream(g.m, g.phi.disc, filter, settings().seed);
    LiftStats local;
    std::vector<BigInt> f = crt_lift(
        stream, bound_BF(s, D) * settings().safety,
        [&](const PrimeEntry& e) {
            GammaValues gv = gamma_values_mod_p(g, e);
            return scale(from_roots(gv.F, good_values_mod_p(s, gv)), gv.F.from(scale_big)).c;
        },
        local);
    if (f.back() != scale_big) throw Error(ErrorKind::RoundingFailure, "leading coefficient mismatch");
    for (const BigInt& c : f) local.height = std::max(local.height, log_abs(c));
    if (stats) *stats = local;
    return detail::divide_by_lead(f);
}

}  // namespace cmpoly
