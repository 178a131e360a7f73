#include "padl/ffield.hpp"

#include <algorithm>

namespace padl {

std::shared_ptr<const FqContext> FqContext::make(u64 p, int deg) {
    require(is_prime_u64(p), Err::bad_input, "p must be prime");
    auto ctx = std::make_shared<FqContext>();
    ctx->p_ = p;
    ctx->deg_ = deg;
    ctx->order_ = pow_u64(p, deg);
    ctx->modulus_ = fp::first_irreducible(p, deg);
    return ctx;
}

FqElem::FqElem(FqCtx ctx, std::vector<u64> coords) : ctx_(std::move(ctx)), c_(ctx_->deg(), 0) {
    for (size_t i = 0; i < c_.size() && i < coords.size(); ++i) c_[i] = coords[i] % ctx_->p();
}

FqElem FqElem::from_index(FqCtx ctx, u64 index) {
    FqElem r(ctx);
    for (int i = 0; i < r.ctx_->deg(); ++i) {
        r.c_[i] = index % r.ctx_->p();
        index /= r.ctx_->p();
    }
    return r;
}

FqElem FqElem::from_scalar(FqCtx ctx, u64 v) {
    FqElem r(ctx);
    r.c_[0] = v % r.ctx_->p();
    return r;
}

u64 FqElem::index() const {
    u64 idx = 0;
    for (int i = ctx_->deg() - 1; i >= 0; --i) idx = idx * ctx_->p() + c_[i];
    return idx;
}

bool FqElem::is_zero() const {
    for (u64 x : c_)
        if (x) return false;
    return true;
}

FqElem operator+(const FqElem& a, const FqElem& b) {
    FqElem r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = addmod(a.c_[i], b.c_[i], a.ctx_->p());
    return r;
}

FqElem operator-(const FqElem& a, const FqElem& b) {
    FqElem r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = submod(a.c_[i], b.c_[i], a.ctx_->p());
    return r;
}

FqElem FqElem::operator-() const {
    FqElem r = *this;
    for (auto& x : r.c_) x = submod(0, x, ctx_->p());
    return r;
}

FqElem operator*(const FqElem& a, const FqElem& b) {
    FqElem r(a.ctx_);
    fp::Poly prod = fp::mul(a.c_, b.c_, a.ctx_->p());
    prod = fp::rem(prod, a.ctx_->modulus(), a.ctx_->p());
    prod.resize(a.ctx_->deg(), 0);
    r.c_ = prod;
    return r;
}

FqElem FqElem::pow(u64 e) const {
    FqElem r = one_like(), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FqElem FqElem::inverse() const {
    require(!is_zero(), Err::denominator_non_unit, "inverse of zero in F_q");
    return pow(ctx_->order() - 2);
}

u64 FqElem::trace_to_fp() const {
    FqElem acc = *this, x = *this;
    for (int i = 1; i < ctx_->deg(); ++i) {
        x = x.frobenius_p();
        acc = acc + x;
    }
    for (size_t i = 1; i < acc.c_.size(); ++i)
        require(acc.c_[i] == 0, Err::internal, "trace did not land in F_p");
    return acc.c_.empty() ? 0 : acc.c_[0];
}

FqElem eval_over_fq(const MPoly& f, const std::vector<FqElem>& x) {
    require(!x.empty(), Err::internal, "evaluation point has no coordinates");
    FqElem proto = x[0].zero_like();
    u64 p = proto.ctx()->p();
    return mp_eval(
        f, x, proto, [&](u64 c) { return FqElem::from_scalar(x[0].ctx(), c % p); });
}

bool on_variety(const AffineVariety& V, const std::vector<FqElem>& x) {
    for (const auto& f : V.equations)
        if (!eval_over_fq(f, x).is_zero()) return false;
    if (V.inverted && eval_over_fq(*V.inverted, x).is_zero()) return false;
    return true;
}

std::vector<std::vector<FqElem>> points_over(const AffineVariety& V, int r, const EnumBudget& budget) {
    require(r >= 1, Err::bad_input, "extension degree must be positive");
    FqCtx ctx = FqContext::make(V.p, V.a * r);
    u64 field = ctx->order();
    // candidate count field^d against the budget
    u64 total = 1;
    for (int i = 0; i < V.d; ++i) {
        require(total <= budget.max_candidates / field, Err::budget_exceeded,
                "point enumeration exceeds the candidate budget");
        total *= field;
    }
    std::vector<std::vector<FqElem>> pts;
    std::vector<u64> odo(V.d, 0);
    std::vector<FqElem> x(V.d, FqElem(ctx));
    for (u64 n = 0; n < total; ++n) {
        u64 t = n;
        for (int i = V.d - 1; i >= 0; --i) {
            odo[i] = t % field;
            t /= field;
        }
        for (int i = 0; i < V.d; ++i) x[i] = FqElem::from_index(ctx, odo[i]);
        if (on_variety(V, x)) pts.push_back(x);
    }
    return pts;
}

namespace {

std::vector<u64> point_key(const std::vector<FqElem>& x) {
    std::vector<u64> k;
    k.reserve(x.size());
    for (const auto& c : x) k.push_back(c.index());
    return k;
}

std::vector<FqElem> frobenius_q(const std::vector<FqElem>& x, u64 q) {
    std::vector<FqElem> y;
    y.reserve(x.size());
    for (const auto& c : x) y.push_back(c.pow(q));
    return y;
}

} // namespace

std::vector<ClosedPoint> closed_points_up_to(const AffineVariety& V, int Dmax, const EnumBudget& budget) {
    std::vector<ClosedPoint> out;
    u64 q = V.q();
    for (int r = 1; r <= Dmax; ++r) {
        auto pts = points_over(V, r, budget);
        for (const auto& x : pts) {
            // true degree: smallest r' | r with x fixed by Frob^(r')
            int true_deg = r;
            for (int rp = 1; rp < r; ++rp) {
                if (r % rp) continue;
                u64 qr = pow_u64(q, rp);
                bool fixed = true;
                for (const auto& c : x) fixed = fixed && c.pow(qr) == c;
                if (fixed) {
                    true_deg = rp;
                    break;
                }
            }
            if (true_deg != r) continue; // counted at its own level
            // emit only when x is the lex-least point of its orbit
            auto key = point_key(x);
            bool least = true;
            auto y = frobenius_q(x, q);
            for (int j = 1; j < r && least; ++j) {
                if (point_key(y) < key) least = false;
                y = frobenius_q(y, q);
            }
            if (least) out.push_back(ClosedPoint{r, x});
        }
    }
    return out;
}

} // namespace padl
