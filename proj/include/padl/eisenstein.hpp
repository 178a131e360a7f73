#pragma once

#include <vector>

#include "padl/padic.hpp"

namespace padl {

// The Eisenstein extension B[pi] with pi^(p-1) = -p, over a base ring B
// (Z/p^N or an unramified Zq).  An element is sum_{i<p-1} c_i pi^i; products
// fold the overflow with pi^(p-1) = -p exactly.  The normalized valuation has
// v(pi) = 1, so v(p) = p-1.
template <class B>
class Eisenstein {
  public:
    Eisenstein() = default;
    explicit Eisenstein(std::vector<B> coeffs) : c_(std::move(coeffs)) {
        require(!c_.empty(), Err::internal, "empty Eisenstein element");
        require(c_.size() == size_t(p() - 1), Err::internal, "Eisenstein element has wrong length");
    }

    static Eisenstein from_base(const B& b) {
        std::vector<B> c(size_t(b.p() - 1), b.zero_like());
        c[0] = b;
        return Eisenstein(std::move(c));
    }

    // pi itself (or -p when p = 2, where pi has degree 1 over nothing at all).
    static Eisenstein pi(const B& proto) {
        if (proto.p() == 2) return from_base(proto.from_int_like(-2));
        std::vector<B> c(size_t(proto.p() - 1), proto.zero_like());
        c[1] = proto.one_like();
        return Eisenstein(std::move(c));
    }

    u64 p() const { return c_[0].p(); }
    int width() const { return (int)c_.size(); }
    const std::vector<B>& coeffs() const { return c_; }
    const B& coeff(int i) const { return c_[i]; }

    Eisenstein zero_like() const {
        std::vector<B> c(c_.size(), c_[0].zero_like());
        return Eisenstein(std::move(c));
    }
    Eisenstein one_like() const {
        Eisenstein r = zero_like();
        r.c_[0] = c_[0].one_like();
        return r;
    }
    Eisenstein from_int_like(long long v) const {
        Eisenstein r = zero_like();
        r.c_[0] = c_[0].from_int_like(v);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_unit() const { return c_[0].is_unit(); }

    // Largest k with p^k dividing every coordinate (matches divexact_p_pow).
    int valuation(bool* at_precision = nullptr) const {
        int best = c_[0].prec();
        bool cap = true;
        for (const auto& x : c_) {
            bool atp = false;
            int v = x.valuation(&atp);
            best = std::min(best, atp ? x.prec() : v);
            cap = cap && atp;
        }
        if (at_precision) *at_precision = cap;
        return best;
    }

    // Valuation in pi-units; at_precision set when only a lower bound is known.
    long pi_valuation(bool* at_precision = nullptr) const {
        long best = pi_precision();
        bool cap = true;
        for (int i = 0; i < width(); ++i) {
            bool atp = false;
            long v = (long)(p() - 1) * c_[i].valuation(&atp) + i;
            if (!atp && v < best) {
                best = v;
                cap = false;
            }
        }
        if (at_precision) *at_precision = cap;
        return best;
    }

    // Provable absolute precision in pi-units.
    long pi_precision() const {
        long best = (long)(p() - 1) * c_[0].prec();
        for (int i = 1; i < width(); ++i) best = std::min(best, (long)(p() - 1) * c_[i].prec() + i);
        return best;
    }

    int prec() const { // base-ring precision floor, for generic code
        int m = c_[0].prec();
        for (const auto& x : c_) m = std::min(m, x.prec());
        return m;
    }

    Eisenstein reduced(int base_prec) const {
        Eisenstein r = *this;
        for (auto& x : r.c_) x = x.reduced(base_prec);
        return r;
    }

    Eisenstein divexact_p_pow(int k) const {
        Eisenstein r = *this;
        for (auto& x : r.c_) x = x.divexact_p_pow(k);
        return r;
    }

    Eisenstein divexact_int(long long k) const {
        Eisenstein r = *this;
        for (auto& x : r.c_) x = x.divexact_int(k);
        return r;
    }

    Eisenstein shifted_up(int k) const {
        Eisenstein r = *this;
        for (auto& x : r.c_) x = x.shifted_up(k);
        return r;
    }

    friend Eisenstein operator+(const Eisenstein& a, const Eisenstein& b) {
        Eisenstein r = a;
        for (int i = 0; i < r.width(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend Eisenstein operator-(const Eisenstein& a, const Eisenstein& b) {
        Eisenstein r = a;
        for (int i = 0; i < r.width(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    Eisenstein operator-() const {
        Eisenstein r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend Eisenstein operator*(const Eisenstein& a, const Eisenstein& b) {
        int w = a.width();
        std::vector<B> prod(size_t(2 * w - 1), a.c_[0].zero_like());
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < w; ++j) prod[i + j] = prod[i + j] + a.c_[i] * b.c_[j];
        B minus_p = a.c_[0].from_int_like(-(long long)a.p());
        Eisenstein r = a.zero_like();
        for (int k = 2 * w - 2; k >= w; --k) prod[k - w] = prod[k - w] + prod[k] * minus_p;
        for (int i = 0; i < w; ++i) r.c_[i] = prod[i];
        return r;
    }

    Eisenstein pow(u64 e) const {
        Eisenstein r = one_like(), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    Eisenstein unit_inverse() const {
        require(is_unit(), Err::denominator_non_unit, "inverse of non-unit Eisenstein element");
        Eisenstein y = from_base(c_[0].unit_inverse());
        for (int i = 0; i < 64; ++i) {
            Eisenstein t = one_like() + (one_like() - *this * y); // 2 - xy
            Eisenstein next = y * t;
            if (next == y) return next;
            y = next;
        }
        fail(Err::internal, "Eisenstein inverse iteration did not stabilize");
    }

    friend bool operator==(const Eisenstein& a, const Eisenstein& b) {
        for (int i = 0; i < a.width(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const Eisenstein& a, const Eisenstein& b) { return !(a == b); }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < width(); ++i) s += (i ? " + " : "") + c_[i].str() + (i ? "*pi^" + std::to_string(i) : "");
        return s + ")";
    }

  private:
    std::vector<B> c_;
};

using EisPadic = Eisenstein<PadicInt>;

} // namespace padl
