#pragma once

#include <cstdint>
#include <string>

#include "padl/error.hpp"

namespace padl {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// p^k as u64, guarding the 2^62 headroom every modulus in this library must
// respect (so a product of two residues fits in u128 and sums never wrap).
inline u64 pow_u64(u64 p, int k) {
    u64 r = 1;
    for (int i = 0; i < k; ++i) {
        require(r <= (u64(1) << 62) / p, Err::bad_input, "p^N exceeds the 62-bit working range");
        r *= p;
    }
    return r;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return u64(u128(a) * b % m); }

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

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

// Inverse of a unit mod p^k, by lifting the mod-p inverse (Fermat) with
// Newton steps y <- y(2 - ay).
inline u64 inv_unit_mod(u64 a, u64 p, int k) {
    u64 pk = pow_u64(p, k);
    a %= pk;
    require(a % p != 0, Err::internal, "inverse of a non-unit");
    u64 y = powmod(a % p, p - 2, p);
    int have = 1;
    while (have < k) {
        u64 t = mulmod(a, y, pk);
        t = submod(2 % pk, t, pk);
        y = mulmod(y, t, pk);
        have *= 2;
    }
    return y;
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// An element of Z/p^prec, tagged with its provable absolute precision.
// Arithmetic combines operands at the minimum of the two tags; nothing ever
// claims more digits than it can prove.  Division by p is only available as
// divexact_p_pow, which demands exact divisibility and pays for the shift
// with precision.
class PadicInt {
  public:
    PadicInt() : p_(0), prec_(0), val_(0) {}

    PadicInt(u64 p, int prec, u64 value) : p_(p), prec_(prec) {
        require(prec >= 1, Err::precision_exhausted, "PadicInt with no provable digits");
        val_ = value % pow_u64(p, prec);
    }

    static PadicInt from_int(u64 p, int prec, long long v) {
        u64 m = pow_u64(p, prec);
        long long r = v % (long long)m;
        if (r < 0) r += (long long)m;
        return PadicInt(p, prec, (u64)r);
    }

    u64 p() const { return p_; }
    int prec() const { return prec_; }
    u64 value() const { return val_; }
    u64 modulus() const { return pow_u64(p_, prec_); }

    PadicInt zero_like() const { return PadicInt(p_, prec_, 0); }
    PadicInt one_like() const { return PadicInt(p_, prec_, 1); }
    PadicInt from_int_like(long long v) const { return from_int(p_, prec_, v); }

    // Exact division by an integer: unit part by inverse, p-part by shift.
    PadicInt divexact_int(long long k) const {
        require(k != 0, Err::internal, "division by zero");
        bool neg = k < 0;
        u64 a = neg ? u64(-k) : u64(k);
        int v = 0;
        while (a % p_ == 0) {
            a /= p_;
            ++v;
        }
        PadicInt r = divexact_p_pow(v);
        r = r * PadicInt(p_, r.prec(), a % r.modulus()).unit_inverse();
        return neg ? -r : r;
    }

    bool is_zero() const { return val_ == 0; }
    bool is_unit() const { return val_ % p_ != 0; }

    // Valuation, capped at the precision tag.  `at_precision` is set when the
    // residue vanishes and all we can say is v >= prec.
    int valuation(bool* at_precision = nullptr) const {
        if (at_precision) *at_precision = false;
        if (val_ == 0) {
            if (at_precision) *at_precision = true;
            return prec_;
        }
        int v = 0;
        u64 x = val_;
        while (x % p_ == 0) {
            x /= p_;
            ++v;
        }
        return v;
    }

    PadicInt reduced(int new_prec) const {
        require(new_prec >= 1, Err::precision_exhausted, "reduction to zero digits");
        if (new_prec >= prec_) return *this;
        return PadicInt(p_, new_prec, val_ % pow_u64(p_, new_prec));
    }

    // p^k * x, known modulo p^(prec+k).
    PadicInt shifted_up(int k) const {
        u64 m = pow_u64(p_, prec_ + k);
        u64 v = val_;
        for (int i = 0; i < k; ++i) v *= p_;
        return PadicInt(p_, prec_ + k, v % m);
    }

    // x / p^k for exactly divisible x; precision drops by k.
    PadicInt divexact_p_pow(int k) const {
        if (k == 0) return *this;
        require(k <= prec_, Err::precision_exhausted, "division by p beyond precision");
        u64 pk = pow_u64(p_, k);
        require(val_ % pk == 0, Err::precision_exhausted, "inexact division by p");
        require(prec_ - k >= 1, Err::precision_exhausted, "division by p consumed all digits");
        return PadicInt(p_, prec_ - k, (val_ / pk) % pow_u64(p_, prec_ - k));
    }

    PadicInt unit_inverse() const {
        require(is_unit(), Err::denominator_non_unit, "inverse of non-unit in Z/p^N");
        return PadicInt(p_, prec_, inv_unit_mod(val_, p_, prec_));
    }

    friend PadicInt operator+(const PadicInt& a, const PadicInt& b) {
        int pr = a.join(b);
        u64 m = pow_u64(a.p_, pr);
        return PadicInt(a.p_, pr, addmod(a.val_ % m, b.val_ % m, m));
    }
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b) {
        int pr = a.join(b);
        u64 m = pow_u64(a.p_, pr);
        return PadicInt(a.p_, pr, submod(a.val_ % m, b.val_ % m, m));
    }
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b) {
        int pr = a.join(b);
        u64 m = pow_u64(a.p_, pr);
        return PadicInt(a.p_, pr, mulmod(a.val_ % m, b.val_ % m, m));
    }
    PadicInt operator-() const { return PadicInt(p_, prec_, val_ == 0 ? 0 : modulus() - val_); }

    PadicInt pow(u64 e) const {
        PadicInt r = one_like(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // Equality as far as both tags can see.
    friend bool operator==(const PadicInt& a, const PadicInt& b) {
        int pr = a.join(b);
        u64 m = pow_u64(a.p_, pr);
        return a.val_ % m == b.val_ % m;
    }
    friend bool operator!=(const PadicInt& a, const PadicInt& b) { return !(a == b); }

    std::string str() const { return std::to_string(val_) + " (mod " + std::to_string(p_) + "^" + std::to_string(prec_) + ")"; }

  private:
    int join(const PadicInt& o) const {
        require(p_ == o.p_ && p_ != 0, Err::internal, "mixed primes in PadicInt arithmetic");
        return prec_ < o.prec_ ? prec_ : o.prec_;
    }

    u64 p_;
    int prec_;
    u64 val_;
};

// Hensel lift of a simple root: given x with f(x) ≡ 0 mod p and f'(x) a unit,
// refine to precision `prec`.  f and df are callbacks returning PadicInt at
// the working precision.
template <class F, class DF>
PadicInt hensel_root(const F& f, const DF& df, PadicInt x0, int prec) {
    PadicInt x = PadicInt(x0.p(), prec, x0.value());
    for (int have = 1; have < prec; have *= 2) {
        PadicInt fx = f(x);
        PadicInt d = df(x);
        require(d.is_unit(), Err::denominator_non_unit, "Hensel derivative not a unit");
        x = x - fx * d.unit_inverse();
    }
    return x;
}

} // namespace padl
