#pragma once

#include "padl/padic.hpp"

namespace padl {

// num / p^den over a base ring.  Denominators enter only through negative
// twists and the 1/q^s rescaling of an L-series variable; everything else
// stays at den = 0.  Addition aligns denominators by shifting numerators up,
// which costs nothing in provable precision.
template <class R>
struct Scaled {
    R num;
    int den = 0;

    static Scaled wrap(const R& r) { return {r, 0}; }

    Scaled zero_like() const { return {num.zero_like(), 0}; }
    Scaled one_like() const { return {num.one_like(), 0}; }
    Scaled from_int_like(long long v) const { return {num.from_int_like(v), 0}; }

    bool is_zero() const { return num.is_zero(); }
    int prec() const { return num.prec() - den; }

    // Cancel common powers of p between numerator and denominator, as far as
    // exact divisibility at the current precision allows.
    Scaled normalized() const {
        Scaled r = *this;
        while (r.den > 0) {
            bool atp = false;
            int v = r.num.valuation(&atp);
            if (v < 1 && !atp) break;
            if (atp) break; // all-zero numerator: leave as is
            r.num = r.num.divexact_p_pow(1);
            r.den -= 1;
        }
        return r;
    }

    // p-integrality at the current precision; at_precision reports an
    // undecidable case (numerator vanishes at precision but den > 0).
    bool is_integral(bool* undecidable = nullptr) const {
        if (undecidable) *undecidable = false;
        Scaled r = normalized();
        if (r.den == 0) return true;
        bool atp = false;
        (void)r.num.valuation(&atp);
        if (atp) {
            if (undecidable) *undecidable = true;
            return false;
        }
        return false;
    }

    long valuation(bool* at_precision = nullptr) const {
        return (long)num.valuation(at_precision) - den;
    }

    friend Scaled operator+(const Scaled& a, const Scaled& b) {
        int d = std::max(a.den, b.den);
        return {a.num.shifted_up(d - a.den) + b.num.shifted_up(d - b.den), d};
    }
    friend Scaled operator-(const Scaled& a, const Scaled& b) {
        int d = std::max(a.den, b.den);
        return {a.num.shifted_up(d - a.den) - b.num.shifted_up(d - b.den), d};
    }
    friend Scaled operator*(const Scaled& a, const Scaled& b) { return {a.num * b.num, a.den + b.den}; }
    Scaled operator-() const { return {-num, den}; }

    Scaled unit_inverse() const {
        Scaled r = normalized();
        if (r.den == 0) return {r.num.unit_inverse(), 0};
        // value is u / p^den with u a unit: inverse is u^{-1} p^den
        return {r.num.unit_inverse().shifted_up(r.den), 0};
    }

    Scaled divexact_int(long long k) const {
        require(k != 0, Err::internal, "division by zero");
        bool neg = k < 0;
        u64 a = neg ? u64(-k) : u64(k);
        u64 p = num.p();
        int v = 0;
        while (a % p == 0) {
            a /= p;
            ++v;
        }
        Scaled r{num * num.from_int_like((long long)a).unit_inverse(), den + v};
        return neg ? -r : r;
    }

    friend bool operator==(const Scaled& a, const Scaled& b) {
        int d = std::max(a.den, b.den);
        return a.num.shifted_up(d - a.den) == b.num.shifted_up(d - b.den);
    }
    friend bool operator!=(const Scaled& a, const Scaled& b) { return !(a == b); }

    u64 p() const { return num.p(); }

    std::string str() const {
        std::string s = num.str();
        if (den) s += " / p^" + std::to_string(den);
        return s;
    }
};

} // namespace padl
