#pragma once

#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cmpoly/arith.hpp"
#include "cmpoly/cache.hpp"
#include "cmpoly/ecfp.hpp"
#include "cmpoly/errors.hpp"
#include "cmpoly/fppoly.hpp"
#include "cmpoly/parallel.hpp"
#include "cmpoly/polys.hpp"
#include "cmpoly/qforms.hpp"
#include "cmpoly/store.hpp"

namespace cmpoly {

/// The level 2 classical modular polynomial.
inline BiPoly phi2() {
    BiPoly P(3, 3);
    auto set = [&](int i, int j, const char* v) {
        P.at(i, j) = BigInt(v);
        P.at(j, i) = BigInt(v);
    };
    set(3, 0, "1");
    set(2, 2, "-1");
    set(2, 1, "1488");
    set(2, 0, "-162000");
    set(1, 1, "40773375");
    set(1, 0, "8748000000");
    set(0, 0, "-157464000000000");
    return P;
}

/// Upper bound (natural log) on the coefficient height of Phi_m.
inline double height_bound_phi(u64 m) {
    if (m < 2) throw Error(ErrorKind::BadInput, "level must be at least 2");
    auto prime_bound = [](double l) { return 6 * l * std::log(l) + 18 * l; };
    auto f = factor_small(m);
    if (f.size() == 1 && f[0].second == 1) return prime_bound(static_cast<double>(m));
    double md = static_cast<double>(m), s = 0;
    for (auto [l, k] : f) s += k * prime_bound(static_cast<double>(l)) * (md / static_cast<double>(l));
    double ps = static_cast<double>(psi(m));
    return ps / md * s + ps * std::log(md);
}

// ---- prime selection ----

/// A prime p with 4p = t^2 - (m v)^2 disc.  The curves with trace t (sign
/// included) have Frobenius congruent to 1 modulo m, so their full m-torsion
/// is rational.
struct PrimeEntry {
    u64 p = 0;
    i64 t = 0;
    u64 v = 1;
};

/// Deterministic stream of suitable primes in increasing order of |t|,
/// falling back to random (t, v) once p would leave the machine-word range.
class PrimeStream {
public:
    PrimeStream(u64 m, i64 disc, std::function<bool(u64)> accept = {}, u64 seed = 0)
        : m_(m), disc_(disc), accept_(std::move(accept)), rng_(seed ^ 0x9e3779b97f4a7c15ULL ^ (m * 1000003ULL) ^ static_cast<u64>(-disc)) {
        if (m < 2) throw Error(ErrorKind::BadInput, "level must be at least 2");
        if (disc >= -4) throw Error(ErrorKind::BadInput, "order discriminant must be below -4");
        v_ = (mod_of(disc, 8) == 1 && m % 2 == 1) ? 2 : 1;
        set_residues(m_ * v_);
    }

    u64 level() const { return m_; }
    i64 disc() const { return disc_; }

    PrimeEntry next() {
        for (;;) {
            std::optional<PrimeEntry> e = widening_ ? random_candidate() : scan_candidate();
            if (!e) continue;
            if (!seen_.insert(e->p).second) continue;
            if (accept_ && !accept_(e->p)) continue;
            return *e;
        }
    }

private:
    static constexpr u64 kLimit = u64(1) << 61;

    void set_residues(u64 w) {
        w_ = w;
        u64 two_m = 2 * m_;
        c_ = (2 + mulmod(w % two_m, mod_of(disc_, two_m), two_m)) % two_m;
        u64 c2 = (two_m - c_) % two_m;
        res_.assign({std::min(c_, c2), std::max(c_, c2)});
        if (res_[0] == res_[1]) res_.pop_back();
    }

    std::optional<PrimeEntry> make(u64 t, u64 w) {
        u128 n = static_cast<u128>(t) * t + static_cast<u128>(w) * w * static_cast<u64>(-disc_);
        if (n % 4) return std::nullopt;
        n /= 4;
        if (n >= kLimit) return std::nullopt;
        u64 p = static_cast<u64>(n);
        if (p < 1000 || !is_prime(p)) return std::nullopt;
        u64 two_m = 2 * m_;
        i64 ts = (t % two_m == c_) ? static_cast<i64>(t) : -static_cast<i64>(t);
        return PrimeEntry{p, ts, w / m_};
    }

    std::optional<PrimeEntry> scan_candidate() {
        u64 t = 2 * m_ * k_ + res_[idx_];
        if (++idx_ == static_cast<int>(res_.size())) {
            idx_ = 0;
            ++k_;
        }
        if (t == 0) return std::nullopt;
        u128 n = static_cast<u128>(t) * t + static_cast<u128>(w_) * w_ * static_cast<u64>(-disc_);
        if (n / 4 >= kLimit) {
            widening_ = true;
            return std::nullopt;
        }
        return make(t, w_);
    }

    std::optional<PrimeEntry> random_candidate() {
        if (++random_tries_ > 10000000) throw Error(ErrorKind::PrimePoolExhausted, "no further suitable primes below 2^61");
        u64 ell = largest_prime_factor(m_);
        u64 extra = std::uniform_int_distribution<u64>(1, 64)(rng_);
        if (extra % ell == 0) return std::nullopt;
        u64 w = m_ * v_ * extra;
        u128 base = static_cast<u128>(w) * w * static_cast<u64>(-disc_);
        if (base >= static_cast<u128>(kLimit) * 4) return std::nullopt;
        double tmax = std::sqrt(static_cast<double>(static_cast<u128>(kLimit) * 4 - base));
        u64 two_m = 2 * m_;
        u64 c = (2 + mulmod(w % two_m, mod_of(disc_, two_m), two_m)) % two_m;
        u64 k = std::uniform_int_distribution<u64>(0, static_cast<u64>(tmax / static_cast<double>(two_m)))(rng_);
        u64 t = two_m * k + c;
        if (t == 0) return std::nullopt;
        auto e = make(t, w);
        if (e) e->t = static_cast<i64>(t);
        return e;
    }

    u64 m_;
    i64 disc_;
    std::function<bool(u64)> accept_;
    std::mt19937_64 rng_;
    u64 v_ = 1, w_ = 1, c_ = 0;
    std::vector<u64> res_;
    u64 k_ = 0;
    int idx_ = 0;
    bool widening_ = false;
    u64 random_tries_ = 0;
    std::set<u64> seen_;
};

struct PrimePlan {
    u64 m = 0;
    i64 disc = 0;
    double bound = 0;
    std::vector<PrimeEntry> primes;
};

/// The first primes of the stream whose logs sum past bound + log 2.
inline PrimePlan select_primes(u64 m, i64 disc, double bound, std::function<bool(u64)> accept = {}) {
    PrimeStream s(m, disc, std::move(accept), settings().seed);
    PrimePlan plan{m, disc, bound, {}};
    double acc = 0;
    while (acc < bound + std::log(2.0)) {
        plan.primes.push_back(s.next());
        acc += std::log(static_cast<double>(plan.primes.back().p));
    }
    return plan;
}

// ---- CRT driver ----

struct LiftStats {
    std::vector<u64> used;
    std::vector<std::pair<u64, std::string>> rejected;
    double bound = 0;
    double height = 0;
    u64 check_prime = 0;
};

/// Lifts a fixed-length vector of integers from its residues.  `per_prime`
/// maps a PrimeEntry to the residues (or throws PrimeRejected).  Primes are
/// accepted in stream order until their log-product exceeds bound + log 2;
/// the result is then confirmed against the next successful prime.
template <class Fn>
std::vector<BigInt> crt_lift(PrimeStream& stream, double bound, Fn&& per_prime, LiftStats& stats) {
    const double target = bound + std::log(2.0);
    stats.bound = bound;
    std::vector<std::vector<u64>> rows;
    std::vector<PrimeEntry> pending_entries;
    std::vector<Outcome<std::vector<u64>>> pending;
    std::size_t cursor = 0;
    double acc = 0, last_log = 0;
    bool have_check = false;
    std::vector<u64> check;
    auto refill = [&] {
        std::size_t want = settings().jobs;
        if (acc < target) {
            double lp = last_log > 0 ? last_log : 20.0;
            want = std::max<std::size_t>(want, static_cast<std::size_t>(std::ceil((target - acc) / lp)) + 1);
        }
        pending_entries.clear();
        for (std::size_t i = 0; i < want; ++i) pending_entries.push_back(stream.next());
        pending = parallel_map<std::vector<u64>>(
            pending_entries.size(), [&](std::size_t i) { return per_prime(pending_entries[i]); }, settings().jobs);
        cursor = 0;
    };
    while (!have_check) {
        if (cursor == pending.size()) refill();
        const PrimeEntry& e = pending_entries[cursor];
        auto& out = pending[cursor];
        ++cursor;
        if (!out.value) {
            stats.rejected.emplace_back(e.p, out.rejected);
            if (stats.rejected.size() > 200 + 20 * stats.used.size())
                throw Error(ErrorKind::PrimePoolExhausted, "too many rejected primes (last: " + out.rejected + ")");
            continue;
        }
        if (acc < target) {
            stats.used.push_back(e.p);
            rows.push_back(std::move(*out.value));
            last_log = std::log(static_cast<double>(e.p));
            acc += last_log;
            if (settings().verbose)
                std::cerr << "crt: " << stats.used.size() << " primes, " << static_cast<long>(acc) << "/" << static_cast<long>(target) << "\n";
        } else {
            stats.check_prime = e.p;
            check = std::move(*out.value);
            have_check = true;
        }
    }
    CrtBasis basis(stats.used);
    std::size_t n = rows.front().size();
    std::vector<BigInt> out(n);
    std::vector<u64> col(rows.size());
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < rows.size(); ++i) col[i] = rows[i][k];
        out[k] = basis.reconstruct(col);
        if (mod_of(out[k], stats.check_prime) != check[k])
            throw Error(ErrorKind::RoundingFailure, "lifted value disagrees with check prime " + std::to_string(stats.check_prime));
    }
    return out;
}

// ---- Phi_m modulo p ----

/// Data shared by all primes when computing Phi_m mod p.
struct PhiContext {
    u64 m = 0;
    u64 psi = 0;
    i64 disc = 0;
    int h = 0;
    RatPoly H;
    u64 ell0 = 1;
    std::vector<u64> rest;
    std::map<u64, BiPoly> small;
};

inline BiPoly phi_lift(u64 m, LiftStats* stats = nullptr);

inline PhiContext make_phi_context(u64 m, std::optional<i64> inside = std::nullopt) {
    PhiContext ctx;
    ctx.m = m;
    ctx.psi = psi(m);
    SuitableOrder so = find_suitable_order(m, inside);
    ctx.disc = so.disc;
    ctx.h = so.class_number;
    ctx.H = store::hilbert(so.disc);
    for (auto [l, k] : factor_small(m)) {
        if (k == 1 && l * l > m) {
            ctx.ell0 = l;
            continue;
        }
        for (int i = 0; i < k; ++i) ctx.rest.push_back(l);
    }
    for (u64 l : ctx.rest) {
        if (!ctx.small.count(l)) ctx.small.emplace(l, phi_lift(l));
    }
    return ctx;
}

/// Phi_m(x_i, Y) mod p for the first psi(m)+1 roots x_i of H_{D'} mod p.
struct PhiRows {
    PrimeField F;
    std::vector<u64> nodes;
    std::vector<u64> table;  // row i holds coefficients of Y^0..Y^psi
    std::size_t stride = 0;
};

namespace detail {

inline FpPoly product_tree(std::vector<FpPoly> fs) {
    if (fs.empty()) throw std::invalid_argument("product_tree: empty");
    while (fs.size() > 1) {
        std::vector<FpPoly> next;
        for (std::size_t i = 0; i + 1 < fs.size(); i += 2) next.push_back(fs[i] * fs[i + 1]);
        if (fs.size() % 2) next.push_back(fs.back());
        fs = std::move(next);
    }
    return fs.front();
}

// Curve with j-invariant j whose Frobenius trace is t.
template <class Rng>
inline Curve curve_with_trace(const PrimeField& F, u64 j, i64 t, Rng& rng) {
    BigInt N = to_big(F.modulus()) + 1 - to_big(t);
    Curve E = curve_from_j(F, j);
    for (int pass = 0; pass < 2; ++pass) {
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) ok = mul(E, N, random_point(E, rng)).inf;
        if (ok) return E;
        E = twist(E);
    }
    throw PrimeRejected("no twist with the expected order");
}

}  // namespace detail

inline PhiRows phi_rows_mod_p(const PhiContext& ctx, const PrimeEntry& e) {
    PrimeField F(e.p);
    PhiRows out{F, {}, {}, ctx.psi + 1};
    std::vector<u64> rts = roots(ctx.H.reduce(F));
    if (static_cast<int>(rts.size()) != ctx.h) throw PrimeRejected("class polynomial does not split");
    if (rts.size() < ctx.psi + 1) throw PrimeRejected("too few surface roots");
    rts.resize(ctx.psi + 1);
    for (u64 j : rts) {
        if (j == 0 || j == 1728 % e.p) throw PrimeRejected("surface root 0 or 1728");
    }
    std::map<u64, BiPolyModP> small;
    for (auto& [l, P] : ctx.small) small.emplace(l, BiPolyModP(P, F));
    std::mt19937_64 rng(e.p ^ settings().seed);
    u64 N = static_cast<u64>(static_cast<i64>(e.p) + 1 - e.t);
    out.table.assign(out.stride * rts.size(), 0);

    for (std::size_t node = 0; node < rts.size(); ++node) {
        u64 j = rts[node];
        std::vector<std::pair<u64, u64>> cur{{j, j}};  // (j, parent)
        u64 prev = 0;
        if (ctx.ell0 > 1) {
            Curve E = detail::curve_with_trace(F, j, e.t, rng);
            auto nb = neighbors_from_torsion(E, ctx.ell0, N, rng);
            if (!nb || nb->size() != ctx.ell0 + 1) throw PrimeRejected("surface neighbor count");
            cur.clear();
            for (u64 x : *nb) cur.emplace_back(x, j);
            prev = ctx.ell0;
        }
        FpPoly row(F);
        if (ctx.rest.empty()) {
            std::vector<u64> js;
            for (auto& [x, par] : cur) js.push_back(x);
            row = from_roots(F, js);
        }
        for (std::size_t d = 0; d < ctx.rest.size(); ++d) {
            u64 l = ctx.rest[d];
            const BiPolyModP& Pl = small.at(l);
            bool last = d + 1 == ctx.rest.size();
            bool same = l == prev;
            if (last) {
                std::vector<FpPoly> fs;
                for (auto& [x, par] : cur) {
                    FpPoly f = Pl.eval_x(x);
                    if (same) {
                        auto [q, r] = divrem(f, FpPoly::linear(F, par));
                        if (!r.is_zero()) throw PrimeRejected("backtrack edge missing");
                        f = q;
                    }
                    fs.push_back(std::move(f));
                }
                row = detail::product_tree(std::move(fs));
            } else {
                std::vector<std::pair<u64, u64>> next;
                for (auto& [x, par] : cur) {
                    std::vector<u64> ys = roots_split(Pl.eval_x(x));
                    if (ys.size() != l + 1) throw PrimeRejected("isogeny neighbors not rational");
                    if (same) {
                        auto it = std::find(ys.begin(), ys.end(), par);
                        if (it == ys.end()) throw PrimeRejected("backtrack edge missing");
                        ys.erase(it);
                    }
                    for (u64 y : ys) next.emplace_back(y, x);
                }
                cur = std::move(next);
            }
            prev = l;
        }
        if (row.degree() != static_cast<int>(ctx.psi)) throw PrimeRejected("row degree differs from psi(m)");
        for (std::size_t k = 0; k <= ctx.psi; ++k) out.table[node * out.stride + k] = row.c[k];
    }
    out.nodes = std::move(rts);
    return out;
}

/// Phi_m mod p as a dense bivariate polynomial.
inline BiPolyModP phi_mod_p(const PhiContext& ctx, const PrimeEntry& e) {
    PrimeField F(e.p);
    int n = static_cast<int>(ctx.psi);
    if (ctx.m == 2) return BiPolyModP(phi2(), F);
    PhiRows rows = phi_rows_mod_p(ctx, e);
    Interpolator I(F, rows.nodes);
    BiPolyModP out(F, n, n);
    std::vector<u64> col(rows.nodes.size());
    for (int k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i < rows.nodes.size(); ++i) col[i] = rows.table[i * rows.stride + k];
        FpPoly f = I.interpolate(col);
        for (int i = 0; i <= n; ++i) out.at(i, k) = f.coeff(i);
    }
    if (!out.symmetric()) throw PrimeRejected("interpolated polynomial is not symmetric");
    return out;
}

inline BiPoly phi_lift(u64 m, LiftStats* stats) {
    if (m < 2) throw Error(ErrorKind::BadInput, "level must be at least 2");
    if (m == 2) {
        if (stats) *stats = LiftStats{};
        return phi2();
    }
    static Memo<BiPoly> memo(
        "phi",
        [](const BiPoly& P) {
            std::ostringstream os;
            write_bipoly(os, P, 0);
            return os.str();
        },
        [](const std::string& s) {
            std::istringstream is(s);
            return read_bipoly(is);
        });
    LiftStats local;
    BiPoly P = memo.get(std::to_string(m), [&] {
        PhiContext ctx = make_phi_context(m);
        PrimeStream stream(m, ctx.disc, {}, settings().seed);
        int n = static_cast<int>(ctx.psi);
        std::vector<BigInt> lower = crt_lift(
            stream, height_bound_phi(m),
            [&](const PrimeEntry& e) {
                BiPolyModP Pp = phi_mod_p(ctx, e);
                std::vector<u64> v;
                for (int i = 0; i <= n; ++i)
                    for (int j = 0; j <= i; ++j) v.push_back(Pp.at(i, j));
                return v;
            },
            local);
        BiPoly R(n, n);
        std::size_t k = 0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= i; ++j, ++k) R.at(i, j) = R.at(j, i) = lower[k];
        local.height = R.height();
        return R;
    });
    if (stats) *stats = local;
    return P;
}

}  // namespace cmpoly
