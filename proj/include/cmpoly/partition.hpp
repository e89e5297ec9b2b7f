#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "cmpoly/gammapoly.hpp"

namespace cmpoly {

/// p(n) by Euler's pentagonal recurrence.
inline BigInt pentagonal_pn(u64 n) {
    static std::mutex mu;
    static std::vector<BigInt> memo{1};
    std::lock_guard<std::mutex> lock(mu);
    while (memo.size() <= n) {
        i64 k = static_cast<i64>(memo.size());
        BigInt s = 0;
        for (i64 g = 1;; ++g) {
            i64 a = g * (3 * g - 1) / 2, b = g * (3 * g + 1) / 2;
            if (a > k) break;
            int sign = (g % 2) ? 1 : -1;
            s += sign * memo[k - a];
            if (b <= k) s += sign * memo[k - b];
        }
        memo.push_back(s);
    }
    return memo[n];
}

/// Height bound for |D|^h H_D(P; x), before the safety factor.
inline double bound_BP(i64 D) { return 7.0 / 3.0 * analytic::bound_Bj(D) + class_number(D) * std::log(static_cast<double>(-D)); }

/// Shared data for H_D(P; x) over many primes.
struct PartitionContext {
    GammaContext g;
    BiPoly psiA, psiB;
    KQuadPoly HA, HB;
};

inline PartitionContext make_partition_context(i64 D) {
    if (D >= 0 || mod_of(D, 24) != 1) throw Error(ErrorKind::BadInput, "discriminant must be negative and 1 mod 24");
    PartitionContext c;
    c.g = make_gamma_context(D);
    c.psiA = store::psi(analytic::Fn::AHat);
    c.psiB = store::psi(analytic::Fn::B);
    c.HA = store::kfield(analytic::Fn::AHat, D);
    c.HB = store::kfield(analytic::Fn::B, D);
    return c;
}

inline bool partition_prime(u64 p) { return p % 12 == 11; }

/// The 36 combinations s/(j(j-1728)) + t gamma over the F_p-roots s, t of
/// Psi_Ahat(x, j) and Psi_B(x, j), summarized by multiplicity.
struct ComboPattern {
    int singles = 0;
    std::vector<u64> doubles;
    int higher = 0;
};

inline ComboPattern combo36_pattern(const PrimeField& F, u64 j, u64 gamma, const BiPolyModP& psiA, const BiPolyModP& psiB) {
    std::vector<u64> s = roots(psiA.eval_y(j)), t = roots(psiB.eval_y(j));
    if (s.size() != 6 || t.size() != 6) throw PrimeRejected("combo36: root counts " + std::to_string(s.size()) + "," + std::to_string(t.size()));
    u64 w = F.inv(F.mul(j, F.sub(j, 1728 % F.modulus())));
    std::map<u64, int> count;
    for (u64 a : s)
        for (u64 b : t) ++count[F.add(F.mul(a, w), F.mul(b, gamma))];
    ComboPattern pat;
    for (auto [v, k] : count) {
        if (k == 1)
            ++pat.singles;
        else if (k == 2)
            pat.doubles.push_back(v);
        else
            ++pat.higher;
    }
    return pat;
}

/// Accepts exactly 32 distinct values with the two repeated ones equal to P and -P.
inline void combo36_check(const PrimeField& F, const ComboPattern& pat, u64 P) {
    if (pat.higher || pat.singles != 32 || pat.doubles.size() != 2)
        throw PrimeRejected("combo36: pattern " + std::to_string(pat.singles) + " singles, " + std::to_string(pat.doubles.size()) + " doubles");
    std::vector<u64> want{P, F.neg(P)};
    std::sort(want.begin(), want.end());
    if (pat.doubles != want) throw PrimeRejected("combo36: repeated values are not +-P");
}

inline void combo36_validate(const PrimeField& F, u64 j, u64 gamma, const BiPolyModP& psiA, const BiPolyModP& psiB, u64 P) {
    combo36_check(F, combo36_pattern(F, j, gamma, psiA, psiB), P);
}

/// Per-prime data of the H_D(P; x) pipeline.
struct PartitionTrace {
    PrimeField F;
    u64 root = 0;  // square root of D used for the K-field reduction
    std::vector<u64> j, gamma, ahat, b, P;
    FpPoly f;  // |D|^h prod (x - P_k)
};

inline u64 unique_root(const FpPoly& a, const FpPoly& b, const char* what) {
    FpPoly g = gcd(a, b);
    if (g.degree() != 1) throw PrimeRejected(std::string(what) + ": gcd degree " + std::to_string(g.degree()));
    return g.F.neg(g.F.mul(g.c[0], g.F.inv(g.c[1])));
}

inline PartitionTrace partition_trace_mod_p(const PartitionContext& c, const PrimeEntry& e, bool other_root = false, bool validate = false) {
    GammaValues gv = gamma_values_mod_p(c.g, e);
    const PrimeField& F = gv.F;
    auto r = sqrt_mod(mod_of(c.g.D, e.p), e.p);
    if (!r) throw PrimeRejected("D is not a square");
    PartitionTrace out{F, other_root ? F.neg(*r) : *r, gv.j, gv.gamma, {}, {}, {}, FpPoly(F)};
    FpPoly HA = c.HA.reduce(F, out.root), HB = c.HB.reduce(F, out.root);
    BiPolyModP psiA(c.psiA, F), psiB(c.psiB, F);
    for (std::size_t k = 0; k < gv.j.size(); ++k) {
        u64 j = gv.j[k];
        if (j == 0 || j == 1728 % e.p) throw PrimeRejected("root at 0 or 1728");
        u64 a = unique_root(psiA.eval_y(j), HA, "Ahat");
        u64 b = unique_root(psiB.eval_y(j), HB, "B");
        u64 P = F.add(F.mul(a, F.inv(F.mul(j, F.sub(j, 1728 % e.p)))), F.mul(b, gv.gamma[k]));
        if (validate) combo36_validate(F, j, gv.gamma[k], psiA, psiB, P);
        out.ahat.push_back(a);
        out.b.push_back(b);
        out.P.push_back(P);
    }
    BigInt scale_big = ipow(BigInt(-c.g.D), static_cast<unsigned long>(c.g.h));
    out.f = scale(from_roots(F, out.P), F.from(scale_big));
    return out;
}

/// H_D(P; x) for D = 1 mod 24 (primitive forms only).
inline RatPoly class_poly_P(i64 D, LiftStats* stats = nullptr, std::function<bool(u64)> accept = {}) {
    PartitionContext c = make_partition_context(D);
    BigInt scale_big = ipow(BigInt(-D), static_cast<unsigned long>(c.g.h));
    auto filter = [accept](u64 p) { return partition_prime(p) && (accept ? accept(p) : true); };
    PrimeStream stream(c.g.m, c.g.phi.disc, filter, settings().seed);
    LiftStats local;
    bool validate = settings().validate_combos;
    std::vector<BigInt> f = crt_lift(
        stream, bound_BP(D) * settings().safety, [&](const PrimeEntry& e) { return partition_trace_mod_p(c, e, false, validate).f.c; }, local);
    if (f.back() != scale_big) throw Error(ErrorKind::RoundingFailure, "leading coefficient mismatch");
    for (const BigInt& x : f) local.height = std::max(local.height, log_abs(x));
    if (stats) *stats = local;
    return detail::divide_by_lead(f);
}

struct PartitionResult {
    u64 n = 0;
    RatPoly poly;
    BigInt pn;
    std::vector<std::pair<i64, RatPoly>> factors;  // (D/u^2, H_{D/u^2}(P; x))
    std::vector<std::pair<i64, LiftStats>> stats;
};

inline RatPoly substitute_sign(const RatPoly& f, int eps) {
    RatPoly out = f;
    if (eps < 0) {
        for (std::size_t k = 1; k < out.c.size(); k += 2) out.c[k] = -out.c[k];
        if (f.degree() % 2) {
            for (auto& q : out.c) q = -q;
        }
    }
    return out;
}

/// H_n^part(x) and p(n) = trace / (24n - 1).
inline PartitionResult partition_poly(u64 n) {
    if (n < 1) throw Error(ErrorKind::BadInput, "n must be positive");
    i64 D = 1 - 24 * static_cast<i64>(n);
    FundamentalDecomposition fd = fundamental_decomposition(D);
    PartitionResult res;
    res.n = n;
    res.poly.c = {BigRat(1)};
    for (i64 u = 1; u <= fd.conductor; ++u) {
        if (fd.conductor % u) continue;
        i64 Du = D / (u * u);
        LiftStats st;
        RatPoly H = class_poly_P(Du, &st);
        int eps = (u % 12 == 1 || u % 12 == 11) ? 1 : -1;
        res.poly = res.poly * substitute_sign(H, eps);
        res.factors.emplace_back(Du, H);
        res.stats.emplace_back(Du, st);
    }
    BigRat tr = res.poly.trace() / BigRat(24 * static_cast<i64>(n) - 1);
    if (tr.get_den() != 1) throw Error(ErrorKind::RoundingFailure, "trace is not divisible by 24n - 1");
    res.pn = tr.get_num();
    return res;
}

}  // namespace cmpoly
