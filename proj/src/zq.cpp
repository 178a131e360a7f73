#include "padl/zq.hpp"

#include <sstream>

namespace padl {

namespace {

// Multiply two coordinate vectors mod p^prec and reduce by the monic modulus.
std::vector<u64> mul_reduce(const std::vector<u64>& a, const std::vector<u64>& b,
                            const std::vector<u64>& modulus, u64 pk) {
    int deg = (int)modulus.size() - 1;
    if (deg == 0) return {};
    std::vector<u64> prod(2 * deg - 1, 0);
    for (int i = 0; i < deg; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < deg; ++j) prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j], pk), pk);
    }
    for (int k = 2 * deg - 2; k >= deg; --k) {
        u64 c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (int i = 0; i < deg; ++i)
            prod[k - deg + i] = submod(prod[k - deg + i], mulmod(c, modulus[i], pk), pk);
    }
    prod.resize(deg);
    return prod;
}

std::vector<u64> eval_int_poly(const std::vector<u64>& poly, const std::vector<u64>& x,
                               const std::vector<u64>& modulus, u64 pk) {
    int deg = (int)modulus.size() - 1;
    std::vector<u64> acc(deg, 0);
    for (int i = (int)poly.size() - 1; i >= 0; --i) {
        acc = mul_reduce(acc, x, modulus, pk);
        acc[0] = addmod(acc[0], poly[i] % pk, pk);
    }
    return acc;
}

} // namespace

std::shared_ptr<const ZqContext> ZqContext::make(u64 p, int N, int deg) {
    return make(p, N, fp::first_irreducible(p, deg));
}

std::shared_ptr<const ZqContext> ZqContext::make(u64 p, int N, const fp::Poly& modulus_mod_p) {
    auto ctx = std::shared_ptr<ZqContext>(new ZqContext());
    ctx->build(p, N, modulus_mod_p);
    return ctx;
}

void ZqContext::build(u64 p, int N, const fp::Poly& m0) {
    require(is_prime_u64(p), Err::bad_input, "p must be prime");
    require(N >= 1, Err::bad_input, "precision must be >= 1");
    require(fp::is_irreducible(m0, p), Err::bad_input, "modulus is not irreducible mod p");
    p_ = p;
    N_ = N;
    deg_ = fp::degree(m0);
    u64 pk = pow_u64(p, N);
    modulus_.assign(deg_ + 1, 0);
    for (int i = 0; i <= deg_; ++i) modulus_[i] = (i < (int)m0.size() ? m0[i] % p : 0);
    require(modulus_[deg_] == 1, Err::bad_input, "modulus must be monic");

    // sigma(T): Hensel-lift the root of m above T^p.  m'(S) is a unit since
    // m is separable mod p.  Start from the coords of T^p mod m, lifted.
    std::vector<u64> s = fp::pow_x_mod(p, 1, m0, p);
    s.resize(deg_, 0);
    std::vector<u64> dm(deg_, 0); // m'(X) coefficients
    for (int i = 1; i <= deg_; ++i) dm[i - 1] = mulmod(modulus_[i] % pk, (u64)i % pk, pk);

    // Newton iteration in raw coordinates (elements of the context are not
    // constructible until frob_pows_ exists).
    for (int have = 1; have < N; have *= 2) {
        std::vector<u64> fs = eval_int_poly(modulus_, s, modulus_, pk);
        std::vector<u64> ds = eval_int_poly(dm, s, modulus_, pk);
        // invert ds: residue-field inverse by Fermat, then Newton lift
        std::vector<u64> y(deg_, 0);
        {
            std::vector<u64> ds1(deg_);
            for (int i = 0; i < deg_; ++i) ds1[i] = ds[i] % p;
            u64 qm1 = pow_u64(p, deg_) - 2;
            std::vector<u64> r(deg_, 0);
            r[0] = 1;
            std::vector<u64> b = ds1;
            u64 e = qm1;
            while (e) {
                if (e & 1) r = mul_reduce(r, b, modulus_, p);
                b = mul_reduce(b, b, modulus_, p);
                e >>= 1;
            }
            y = r;
            for (int lifted = 1; lifted < N; lifted *= 2) {
                std::vector<u64> t = mul_reduce(ds, y, modulus_, pk);
                for (auto& c : t) c = submod(0, c, pk);
                t[0] = addmod(t[0], 2 % pk, pk);
                y = mul_reduce(y, t, modulus_, pk);
            }
        }
        std::vector<u64> corr = mul_reduce(fs, y, modulus_, pk);
        for (int i = 0; i < deg_; ++i) s[i] = submod(s[i], corr[i], pk);
    }

    frob_pows_.assign(deg_, std::vector<u64>(deg_, 0));
    frob_pows_[0][0] = 1;
    for (int i = 1; i < deg_; ++i) frob_pows_[i] = mul_reduce(frob_pows_[i - 1], s, modulus_, pk);
    if (deg_ >= 2) {
        std::vector<u64> check = eval_int_poly(modulus_, s, modulus_, pk);
        for (u64 c : check) require(c == 0, Err::internal, "sigma(T) is not a root of the modulus");
    }
}

ZqElement::ZqElement(ZqCtx ctx, int prec) : ctx_(std::move(ctx)), prec_(prec) {
    require(prec_ >= 1 && prec_ <= ctx_->N(), Err::precision_exhausted, "Zq element precision out of range");
    c_.assign(ctx_->deg(), 0);
}

ZqElement::ZqElement(ZqCtx ctx, int prec, std::vector<u64> coords) : ZqElement(ctx, prec) {
    u64 pk = pow_u64(ctx_->p(), prec_);
    for (size_t i = 0; i < c_.size() && i < coords.size(); ++i) c_[i] = coords[i] % pk;
}

ZqElement ZqElement::from_scalar(ZqCtx ctx, int prec, u64 v) {
    ZqElement r(ctx, prec);
    r.c_[0] = v % pow_u64(ctx->p(), prec);
    return r;
}

ZqElement ZqElement::from_padic(ZqCtx ctx, const PadicInt& v) {
    require(v.p() == ctx->p(), Err::internal, "prime mismatch");
    return from_scalar(ctx, std::min(v.prec(), ctx->N()), v.value());
}

bool ZqElement::is_zero() const {
    for (u64 x : c_)
        if (x) return false;
    return true;
}

bool ZqElement::is_unit() const {
    for (u64 x : c_)
        if (x % ctx_->p()) return true;
    return false;
}

int ZqElement::valuation(bool* at_precision) const {
    if (at_precision) *at_precision = false;
    if (is_zero()) {
        if (at_precision) *at_precision = true;
        return prec_;
    }
    int best = prec_;
    for (u64 x : c_) {
        if (x == 0) continue;
        int v = 0;
        while (x % ctx_->p() == 0) {
            x /= ctx_->p();
            ++v;
        }
        if (v < best) best = v;
    }
    return best;
}

ZqElement ZqElement::reduced(int new_prec) const {
    if (new_prec >= prec_) return *this;
    ZqElement r(ctx_, new_prec);
    u64 pk = pow_u64(ctx_->p(), new_prec);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] % pk;
    return r;
}

ZqElement ZqElement::divexact_p_pow(int k) const {
    if (k == 0) return *this;
    require(prec_ - k >= 1, Err::precision_exhausted, "division by p consumed all digits");
    u64 pk = pow_u64(ctx_->p(), k);
    ZqElement r(ctx_, prec_ - k);
    u64 m = pow_u64(ctx_->p(), prec_ - k);
    for (size_t i = 0; i < c_.size(); ++i) {
        require(c_[i] % pk == 0, Err::precision_exhausted, "inexact division by p in Zq");
        r.c_[i] = (c_[i] / pk) % m;
    }
    return r;
}

int ZqElement::join(const ZqElement& o) const {
    require(ctx_.get() == o.ctx_.get(), Err::internal, "mixed Zq contexts");
    return std::min(prec_, o.prec_);
}

ZqElement operator+(const ZqElement& a, const ZqElement& b) {
    int pr = a.join(b);
    ZqElement r(a.ctx_, pr);
    u64 pk = pow_u64(a.ctx_->p(), pr);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = addmod(a.c_[i] % pk, b.c_[i] % pk, pk);
    return r;
}

ZqElement operator-(const ZqElement& a, const ZqElement& b) {
    int pr = a.join(b);
    ZqElement r(a.ctx_, pr);
    u64 pk = pow_u64(a.ctx_->p(), pr);
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = submod(a.c_[i] % pk, b.c_[i] % pk, pk);
    return r;
}

ZqElement operator*(const ZqElement& a, const ZqElement& b) {
    int pr = a.join(b);
    ZqElement r(a.ctx_, pr);
    u64 pk = pow_u64(a.ctx_->p(), pr);
    std::vector<u64> x(a.c_), y(b.c_);
    for (auto& v : x) v %= pk;
    for (auto& v : y) v %= pk;
    std::vector<u64> mod(a.ctx_->modulus());
    for (auto& v : mod) v %= pk;
    r.c_ = mul_reduce(x, y, mod, pk);
    return r;
}

ZqElement ZqElement::operator-() const {
    ZqElement r(ctx_, prec_);
    u64 pk = pow_u64(ctx_->p(), prec_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = submod(0, c_[i], pk);
    return r;
}

bool operator==(const ZqElement& a, const ZqElement& b) {
    int pr = a.join(b);
    u64 pk = pow_u64(a.ctx_->p(), pr);
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] % pk != b.c_[i] % pk) return false;
    return true;
}

ZqElement ZqElement::frobenius() const {
    // x = sum c_i T^i  ->  sum c_i sigma(T)^i ; scalars are fixed.
    ZqElement r(ctx_, prec_);
    u64 pk = pow_u64(ctx_->p(), prec_);
    const auto& pows = ctx_->frob_pows();
    for (int i = 0; i < ctx_->deg(); ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < ctx_->deg(); ++j)
            r.c_[j] = addmod(r.c_[j], mulmod(c_[i], pows[i][j] % pk, pk), pk);
    }
    return r;
}

ZqElement ZqElement::frobenius_pow(int k) const {
    int d = ctx_->deg();
    k %= d;
    if (k < 0) k += d;
    ZqElement r = *this;
    for (int i = 0; i < k; ++i) r = r.frobenius();
    return r;
}

ZqElement ZqElement::pow(u64 e) const {
    ZqElement r = one_like(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

ZqElement ZqElement::unit_inverse() const {
    require(is_unit(), Err::denominator_non_unit, "inverse of non-unit in Zq");
    // residue-field inverse by Fermat, then Newton lift y <- y(2 - xy)
    ZqElement y = reduced(1).pow(pow_u64(ctx_->p(), ctx_->deg()) - 2);
    y = ZqElement(ctx_, prec_, y.coords());
    for (int have = 1; have < prec_; have *= 2) {
        ZqElement t = -(*this * y);
        t.c_[0] = addmod(t.c_[0], 2 % pow_u64(ctx_->p(), t.prec_), pow_u64(ctx_->p(), t.prec_));
        y = y * t;
    }
    return y;
}

ZqElement ZqElement::teichmuller() const {
    u64 q = pow_u64(ctx_->p(), ctx_->deg());
    ZqElement y = *this;
    for (int iter = 0; iter <= 4 * prec_; ++iter) {
        ZqElement next = y.pow(q);
        if (next == y) return next;
        y = next;
    }
    fail(Err::non_contraction, "Teichmuller iteration did not stabilize");
}

bool ZqElement::is_scalar() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

PadicInt ZqElement::as_padic() const {
    require(is_scalar(), Err::internal, "Zq element is not in Z_p at this precision");
    return PadicInt(ctx_->p(), prec_, c_.empty() ? 0 : c_[0]);
}

std::string ZqElement::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "] (mod " << ctx_->p() << "^" << prec_ << ")";
    return os.str();
}

ZqElement teichmuller_rep(ZqCtx ctx, const std::vector<u64>& residue_coords) {
    ZqElement x(ctx, ctx->N(), residue_coords);
    return x.teichmuller();
}

} // namespace padl
