#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "padl/fppoly.hpp"
#include "padl/padic.hpp"

namespace padl {

// The unramified extension Z_q = Z_p[T]/(m(T)) at working precision N, where
// m is a monic lift of an irreducible polynomial over F_p.  The context owns
// the data every element shares: the modulus and the powers of sigma(T), the
// Hensel-lifted root of m that reduces to T^p (so sigma restricts to the
// p-power map on the residue field and sigma^deg = id).
class ZqContext {
  public:
    static std::shared_ptr<const ZqContext> make(u64 p, int N, int deg);
    static std::shared_ptr<const ZqContext> make(u64 p, int N, const fp::Poly& modulus_mod_p);

    u64 p() const { return p_; }
    int N() const { return N_; }
    int deg() const { return deg_; }
    const std::vector<u64>& modulus() const { return modulus_; }
    const std::vector<std::vector<u64>>& frob_pows() const { return frob_pows_; }

  private:
    ZqContext() = default;
    void build(u64 p, int N, const fp::Poly& modulus_mod_p);

    u64 p_ = 0;
    int N_ = 0;
    int deg_ = 0;
    std::vector<u64> modulus_;                 // monic, length deg+1, coeffs mod p^N
    std::vector<std::vector<u64>> frob_pows_;  // frob_pows_[i] = coords of sigma(T)^i
};

using ZqCtx = std::shared_ptr<const ZqContext>;

class ZqElement {
  public:
    ZqElement() : prec_(0) {}
    ZqElement(ZqCtx ctx, int prec);                          // zero
    ZqElement(ZqCtx ctx, int prec, std::vector<u64> coords); // coords mod p^prec
    static ZqElement from_scalar(ZqCtx ctx, int prec, u64 v);
    static ZqElement from_padic(ZqCtx ctx, const PadicInt& v);

    const ZqCtx& ctx() const { return ctx_; }
    int prec() const { return prec_; }
    const std::vector<u64>& coords() const { return c_; }

    ZqElement zero_like() const { return ZqElement(ctx_, prec_); }
    ZqElement one_like() const { return from_scalar(ctx_, prec_, 1); }
    ZqElement from_int_like(long long v) const {
        u64 m = pow_u64(ctx_->p(), prec_);
        long long r = v % (long long)m;
        if (r < 0) r += (long long)m;
        return from_scalar(ctx_, prec_, (u64)r);
    }
    u64 p() const { return ctx_->p(); }

    ZqElement divexact_int(long long k) const {
        require(k != 0, Err::internal, "division by zero");
        bool neg = k < 0;
        u64 a = neg ? u64(-k) : u64(k);
        int v = 0;
        while (a % p() == 0) {
            a /= p();
            ++v;
        }
        ZqElement r = divexact_p_pow(v);
        r = r * r.from_int_like((long long)a).unit_inverse();
        return neg ? -r : r;
    }

    bool is_zero() const;
    bool is_unit() const; // nonzero residue

    // min over coordinates of v_p, capped at prec (unramified valuation).
    int valuation(bool* at_precision = nullptr) const;

    ZqElement reduced(int new_prec) const;
    ZqElement divexact_p_pow(int k) const;

    ZqElement frobenius() const;            // the canonical lift of x -> x^p
    ZqElement frobenius_pow(int k) const;   // sigma^k (k mod deg)
    ZqElement pow(u64 e) const;
    ZqElement unit_inverse() const;

    // Fixed point of y -> y^(p^deg) above this element's residue.
    ZqElement teichmuller() const;

    bool is_scalar() const; // lies in Z_p at this precision
    PadicInt as_padic() const;

    friend ZqElement operator+(const ZqElement& a, const ZqElement& b);
    friend ZqElement operator-(const ZqElement& a, const ZqElement& b);
    friend ZqElement operator*(const ZqElement& a, const ZqElement& b);
    ZqElement operator-() const;
    friend bool operator==(const ZqElement& a, const ZqElement& b);
    friend bool operator!=(const ZqElement& a, const ZqElement& b) { return !(a == b); }

    std::string str() const;

  private:
    int join(const ZqElement& o) const;

    ZqCtx ctx_;
    int prec_;
    std::vector<u64> c_;
};

// Teichmuller representative of a residue given by coordinates mod p.
ZqElement teichmuller_rep(ZqCtx ctx, const std::vector<u64>& residue_coords);

// Per-job cache of contexts, one per extension degree; write-once entries,
// safe to share across fiber workers.
class ZqPool {
  public:
    ZqPool(u64 p, int N) : p_(p), N_(N) {}
    ZqCtx get(int deg) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(deg);
        if (it != cache_.end()) return it->second;
        auto ctx = ZqContext::make(p_, N_, deg);
        cache_[deg] = ctx;
        return ctx;
    }
    u64 p() const { return p_; }
    int N() const { return N_; }

  private:
    u64 p_;
    int N_;
    std::mutex mu_;
    std::map<int, ZqCtx> cache_;
};

} // namespace padl
