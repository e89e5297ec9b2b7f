#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

#include "cmpoly/arith.hpp"

namespace cmpoly {

struct QuadForm {
    i64 a = 0, b = 0, c = 0;

    i64 disc() const { return b * b - 4 * a * c; }
    i64 content() const { return std::gcd(std::gcd(a, b), c); }
    bool operator==(const QuadForm&) const = default;
    auto operator<=>(const QuadForm&) const = default;
};

inline bool is_discriminant(i64 D) {
    i64 r = ((D % 4) + 4) % 4;
    return D < 0 && (r == 0 || r == 1);
}

inline void require_discriminant(i64 D) {
    if (!is_discriminant(D)) throw Error(ErrorKind::BadInput, "not a negative discriminant: " + std::to_string(D));
}

// Reduced representative of the SL2(Z)-class of a positive definite form.
inline QuadForm reduce_form(QuadForm f) {
    auto normalize = [&] {
        i64 a2 = 2 * f.a;
        i64 k = (f.a - f.b) / a2;
        if (f.a - f.b < 0 && (f.a - f.b) % a2 != 0) --k;
        // b + 2ak in (-a, a]
        i64 nb = f.b + a2 * k;
        f.c = f.c + f.b * k + f.a * k * k;
        f.b = nb;
    };
    for (;;) {
        if (f.b <= -f.a || f.b > f.a) normalize();
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0) f.b = -f.b;
        return f;
    }
}

// All primitive reduced forms of discriminant D, sorted by (a, b).
inline std::vector<QuadForm> primitive_reduced_forms(i64 D) {
    require_discriminant(D);
    std::vector<QuadForm> out;
    i64 amax = static_cast<i64>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b - D) & 1) != 0) continue;
            i64 num = b * b - D;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, b), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

inline int class_number(i64 D) { return static_cast<int>(primitive_reduced_forms(D).size()); }

// Hurwitz class number: sum over D = u^2 D_u of h(D_u), with D = -3 and
// D = -4 weighted 1/3 and 1/2.
inline BigRat hurwitz_class_number(i64 D) {
    require_discriminant(D);
    BigRat total = 0;
    for (i64 u = 1; u * u <= -D; ++u) {
        if (D % (u * u)) continue;
        i64 Du = D / (u * u);
        if (!is_discriminant(Du)) continue;
        if (Du == -3)
            total += BigRat(1, 3);
        else if (Du == -4)
            total += BigRat(1, 2);
        else
            total += class_number(Du);
    }
    return total;
}

struct HeegnerRep {
    QuadForm form;     // a divisible by 6, b = 1 mod 12
    QuadForm reduced;  // its SL2(Z)-reduced class
};

// One representative per SL2(Z)-class among forms [a, b, c] with 6 | a and
// b = 1 (mod 12), chosen with the smallest a reached by the scan.
inline std::vector<HeegnerRep> heegner_reps_level6(i64 D, bool primitive_only = true) {
    require_discriminant(D);
    if (((D % 24) + 24) % 24 != 1) throw Error(ErrorKind::BadInput, "discriminant must be 1 mod 24");
    std::map<QuadForm, QuadForm> found;
    std::size_t want = 0;
    for (i64 u = 1; u * u <= -D; ++u) {
        if (D % (u * u)) continue;
        i64 Du = D / (u * u);
        if (!is_discriminant(Du)) continue;
        if (primitive_only && u > 1) continue;
        want += primitive_reduced_forms(Du).size();
    }
    for (i64 a = 6; found.size() < want; a += 6) {
        for (i64 b = -a + 1; b <= a; ++b) {
            if (((b % 12) + 12) % 12 != 1) continue;
            i64 num = b * b - D;
            if (num % (4 * a)) continue;
            QuadForm f{a, b, num / (4 * a)};
            if (primitive_only && f.content() != 1) continue;
            QuadForm r = reduce_form(f);
            found.emplace(r, f);
        }
        if (a > 6 * (-D) + 6) throw std::logic_error("heegner_reps_level6: scan did not terminate");
    }
    std::vector<HeegnerRep> out;
    for (auto& [r, f] : found) out.push_back({f, r});
    return out;
}

struct FundamentalDecomposition {
    i64 fundamental;
    i64 conductor;
};

inline FundamentalDecomposition fundamental_decomposition(i64 D) {
    require_discriminant(D);
    i64 core = 1;
    for (auto [q, e] : factor_small(static_cast<u64>(-D))) {
        if (e % 2) core *= static_cast<i64>(q);
    }
    i64 D0 = -core;
    if (((D0 % 4) + 4) % 4 != 1) D0 *= 4;
    i64 v2 = D / D0;
    i64 v = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(v2))));
    while (v * v > v2) --v;
    while ((v + 1) * (v + 1) <= v2) ++v;
    return {D0, v};
}

inline bool is_fundamental(i64 D) { return is_discriminant(D) && fundamental_decomposition(D).conductor == 1; }

// True when D = -3 d^2 for some integer d; such discriminants are excluded from
// the class-polynomial constructions.
inline bool is_special_discriminant(i64 D) {
    if (D >= 0 || D % 3) return false;
    i64 q = -D / 3;
    i64 r = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(q))));
    return r * r == q;
}

inline std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (auto [q, e] : factor_small(n)) out.push_back(q);
    return out;
}

inline u64 largest_prime_factor(u64 m) { return prime_divisors(m).back(); }

// psi(m) = m prod_{q | m} (1 + 1/q)
inline u64 psi(u64 m) {
    u64 r = m;
    for (u64 q : prime_divisors(m)) r = r / q * (q + 1);
    return r;
}

struct SuitableOrder {
    i64 disc;
    int class_number;
};

// Smallest order whose class number lies in [psi(m)+1, 3 psi(m)].  With
// `inside`, candidates are f^2 * inside for f prime to 6 and to the largest
// prime of m; otherwise fundamental discriminants are scanned.
inline SuitableOrder find_suitable_order(u64 m, std::optional<i64> inside = std::nullopt, int cap = 100000) {
    if (m < 2) throw Error(ErrorKind::BadInput, "level must be at least 2");
    u64 ell = largest_prime_factor(m);
    i64 lo = static_cast<i64>(psi(m)) + 1, hi = 3 * static_cast<i64>(psi(m));
    auto good = [&](i64 Dp) {
        if (Dp >= -4) return std::optional<int>{};
        int h = class_number(Dp);
        if (h < lo || h > hi) return std::optional<int>{};
        return std::optional<int>{h};
    };
    if (inside) {
        i64 D = *inside;
        require_discriminant(D);
        u64 six_ell = 6 * ell;
        for (i64 f = 1; f <= cap; ++f) {
            if (std::gcd(static_cast<u64>(f), six_ell) != 1) continue;
            i64 Dp = f * f * D;
            if (auto h = good(Dp)) return {Dp, *h};
        }
    } else {
        for (i64 Dp = -7; Dp >= -static_cast<i64>(cap) * 100; --Dp) {
            if (!is_fundamental(Dp)) continue;
            if (auto h = good(Dp)) return {Dp, *h};
        }
    }
    throw Error(ErrorKind::PrimePoolExhausted, "no suitable order found");
}

}  // namespace cmpoly
