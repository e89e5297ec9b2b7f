#ifndef CMPOLY_ARITH_HPP
#define CMPOLY_ARITH_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cmpoly/errors.hpp"

namespace cmpoly {

using BigInt = mpz_class;
using BigRat = mpq_class;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a modulo m; throws if a is not a unit.
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    u64 r = m, nr = a % m;
    while (nr) {
        u64 q = r / nr;
        i64 tmp = t - static_cast<i64>(q) * nt;
        t = nt;
        nt = tmp;
        u64 rr = r - q * nr;
        r = nr;
        nr = rr;
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    return t < 0 ? static_cast<u64>(t + static_cast<i64>(m)) : static_cast<u64>(t);
}

inline u64 mod_of(const BigInt& x, u64 m) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m);
    return r.get_ui();
}

inline u64 mod_of(i64 x, u64 m) {
    i64 r = x % static_cast<i64>(m);
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(m)) : static_cast<u64>(r);
}

inline BigInt to_big(u64 x) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &x);
    return r;
}

inline BigInt to_big(i64 x) {
    BigInt r = to_big(static_cast<u64>(x < 0 ? -static_cast<u128>(x) : x));
    return x < 0 ? BigInt(-r) : r;
}

inline bool fits_u64(const BigInt& x) { return sgn(x) >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64; }

inline u64 to_u64(const BigInt& x) {
    if (!fits_u64(x)) throw std::overflow_error("to_u64: out of range");
    u64 r = 0;
    mpz_export(&r, nullptr, -1, sizeof(u64), 0, 0, x.get_mpz_t());
    return r;
}

namespace detail {

inline bool mr_round_u64(u64 n, u64 a, u64 d, int s) {
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1 || a % n == 0) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool mr_round_big(const BigInt& n, const BigInt& a, const BigInt& d, unsigned long s) {
    BigInt x;
    BigInt nm1 = n - 1;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == nm1) return true;
    }
    return false;
}

}  // namespace detail

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while (!(d & 1)) {
        d >>= 1;
        ++s;
    }
    // These bases are a proof of primality for every 64-bit n.
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (!detail::mr_round_u64(n, a, d, s)) return false;
    }
    return true;
}

// Miller-Rabin: deterministic below 2^64, 64 random rounds above.
inline bool is_prime(const BigInt& n, std::uint64_t seed = 0x5eed) {
    if (n < 2) return false;
    if (fits_u64(n)) return is_prime(to_u64(n));
    if (mpz_even_p(n.get_mpz_t())) return false;
    BigInt d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    BigInt span = n - 3;
    for (int round = 0; round < 64; ++round) {
        BigInt a = rng.get_z_range(span) + 2;
        if (!detail::mr_round_big(n, a, d, s)) return false;
    }
    return true;
}

inline int kronecker(i64 a, u64 n) {
    BigInt A = to_big(a), N = to_big(n);
    return mpz_kronecker(A.get_mpz_t(), N.get_mpz_t());
}

// Tonelli-Shanks square root modulo an odd prime p.
inline std::optional<u64> sqrt_mod(u64 a, u64 p) {
    a %= p;
    if (p == 2 || a == 0) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    int s = 0;
    while (!(q & 1)) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 x = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    int m = s;
    while (t != 1) {
        int i = 0;
        u64 tt = t;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        u64 b = c;
        for (int k = 0; k < m - i - 1; ++k) b = mulmod(b, b, p);
        x = mulmod(x, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return x;
}

inline std::vector<std::pair<u64, int>> factor_small(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        int e = 0;
        while (n % q == 0) {
            n /= q;
            ++e;
        }
        out.emplace_back(q, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline BigInt balanced(const BigInt& x, const BigInt& M) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), M.get_mpz_t());
    if (2 * r > M) r -= M;
    return r;
}

// Residues of one integer modulo a growing set of distinct primes.
class ResidueSystem {
public:
    void add(u64 p, u64 r) {
        for (auto& e : entries_) {
            if (e.first == p) throw std::invalid_argument("ResidueSystem: duplicate modulus");
        }
        entries_.emplace_back(p, r % p);
        modulus_ *= to_big(p);
    }
    const std::vector<std::pair<u64, u64>>& entries() const { return entries_; }
    const BigInt& modulus() const { return modulus_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<std::pair<u64, u64>> entries_;
    BigInt modulus_ = 1;
};

// Precomputed CRT data for many reconstructions over the same primes.
class CrtBasis {
public:
    CrtBasis() = default;
    explicit CrtBasis(std::vector<u64> primes) : primes_(std::move(primes)) {
        modulus_ = 1;
        for (u64 p : primes_) modulus_ *= to_big(p);
        cof_.reserve(primes_.size());
        inv_.reserve(primes_.size());
        for (u64 p : primes_) {
            BigInt c = modulus_ / to_big(p);
            u64 cm = mod_of(c, p);
            if (cm == 0) throw std::invalid_argument("CrtBasis: repeated prime");
            cof_.push_back(c);
            inv_.push_back(invmod(cm, p));
        }
    }
    const BigInt& modulus() const { return modulus_; }
    const std::vector<u64>& primes() const { return primes_; }

    BigInt reconstruct(const std::vector<u64>& residues) const {
        BigInt acc = 0;
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            u64 w = mulmod(residues[i] % primes_[i], inv_[i], primes_[i]);
            mpz_addmul_ui(acc.get_mpz_t(), cof_[i].get_mpz_t(), w);
        }
        return balanced(acc, modulus_);
    }

private:
    std::vector<u64> primes_;
    BigInt modulus_ = 1;
    std::vector<BigInt> cof_;
    std::vector<u64> inv_;
};

// Balanced representative in (-M/2, M/2].
inline BigInt crt_reconstruct(const ResidueSystem& rs) {
    std::vector<u64> ps, rv;
    for (auto& [p, r] : rs.entries()) {
        ps.push_back(p);
        rv.push_back(r);
    }
    return CrtBasis(ps).reconstruct(rv);
}

inline double log_abs(const BigInt& x) {
    if (x == 0) return -1e300;
    long e = 0;
    double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

inline BigInt ipow(const BigInt& b, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline std::string to_string(const BigRat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace cmpoly

#endif
