#include "padl/dwork.hpp"

namespace padl {

namespace {

// pi^k / k! as an exact element of Z_p[pi] at full precision: the p-part of
// k! cancels against (-p)-powers from folding pi^(p-1), so each coefficient
// is a unit times an exact power of p in one pi-coordinate.  No digits are
// ever spent.
EisPadic exp_pi_coeff(u64 p, int N, long k, bool negate_pi, const PadicInt& fact_unit_inv,
                      long fact_v) {
    u64 pk = pow_u64(p, N);
    long fold = k / (long)(p - 1);
    int coord = (int)(k % (long)(p - 1));
    long e = fold - fact_v;
    require(e >= 0, Err::internal, "exp coefficient is not integral");
    bool neg = (fold % 2) != 0;            // (-p)^fold
    if (negate_pi && (k % 2) != 0) neg = !neg; // (-pi)^k
    PadicInt val = fact_unit_inv;
    if (e >= N)
        val = PadicInt(p, N, 0);
    else
        val = val * PadicInt(p, N, pow_u64(p, (int)e) % pk);
    if (neg) val = -val;
    std::vector<PadicInt> c(size_t(p - 1), PadicInt(p, N, 0));
    c[coord] = val;
    return EisPadic{c};
}

} // namespace

// exp(+-pi c t^step): coefficient of t^(step j) is (+-pi)^j c^j / j!.
TruncSeries<EisPadic> exp_pi_monomial_series(u64 p, int N, u64 cf, int step, bool neg, int Dt) {
    PadicInt proto(p, N, 0);
    auto s = ts_zero(Dt, EisPadic::from_base(proto));
    PadicInt funit = proto.one_like();
    PadicInt cpow = proto.one_like();
    PadicInt c = PadicInt(p, N, cf);
    long fv = 0;
    for (long j = 0; j * step <= Dt; ++j) {
        if (j > 0) {
            u64 u = (u64)j;
            while (u % p == 0) {
                u /= p;
                ++fv;
            }
            funit = funit * PadicInt(p, N, u % pow_u64(p, N));
            cpow = cpow * c;
        }
        s.c[j * step] = exp_pi_coeff(p, N, j, neg, funit.unit_inverse(), fv) *
                        EisPadic::from_base(cpow);
    }
    return s;
}

SplittingFunction SplittingFunction::make(u64 p, int a, int N, int Dt) {
    SplittingFunction E;
    E.p_ = p;
    E.q_ = pow_u64(p, a);
    if (Dt <= 0) {
        // truncation from the convergence radius: tail terms at |t| = 1 fall
        // below p^N once the degree passes N e q p / (p-1), e = p-1
        Dt = (int)((long)N * (long)E.q_ * (long)p) + 8;
    }
    int Nw = N + 2;
    require(pow_u64(p, Nw) > 0, Err::bad_input, "splitting-function precision out of range");

    // E(t) = exp(pi t) * exp(-pi t^q), both factors with exact closed-form
    // coefficients; the product costs no precision.
    E.series_ = ts_mul(exp_pi_monomial_series(p, Nw, 1, 1, false, Dt),
                       exp_pi_monomial_series(p, Nw, 1, (int)E.q_, true, Dt));
    EisPadic acc = E.series_.c[0].zero_like();
    for (int k = 0; k <= Dt; ++k) acc = acc + E.series_.c[k];
    E.e1_ = acc;

    // pinned normalization: E(1) = 1 + pi mod pi^2 and E(1)^p = 1
    EisPadic pi = EisPadic::pi(PadicInt(p, Nw, 0));
    EisPadic diff = E.e1_ - pi.one_like() - pi;
    bool atp = false;
    long v = diff.pi_valuation(&atp);
    require(atp || v >= 2, Err::internal, "splitting function lost its normalization");
    EisPadic pw1 = E.e1_.pow(p) - pi.one_like();
    v = pw1.pi_valuation(&atp);
    require(atp || v >= (long)((p - 1) * (long)N), Err::internal,
            "E(1) is not a p-th root of unity at the working precision");
    return E;
}

EisPadic SplittingFunction::psi(const FqElem& x) const {
    u64 tr = x.trace_to_fp();
    return e1_.pow(tr);
}

Eisenstein<ZqElement> SplittingFunction::eval(const ZqElement& z) const {
    std::vector<ZqElement> zero(size_t(p_ - 1), z.zero_like());
    Eisenstein<ZqElement> acc{zero};
    for (int k = (int)series_.trunc(); k >= 0; --k) {
        acc = acc * Eisenstein<ZqElement>::from_base(z);
        // add coefficient, coordinatewise
        std::vector<ZqElement> c;
        c.reserve(size_t(p_ - 1));
        for (u64 i = 0; i + 1 < p_; ++i)
            c.push_back(ZqElement::from_padic(z.ctx(), series_.c[k].coeff((int)i)));
        acc = acc + Eisenstein<ZqElement>{c};
    }
    return acc;
}

CharacterData make_character(u64 p, int a, int N, int d, std::vector<MPoly> fbars) {
    CharacterData chi;
    chi.p = p;
    chi.a = a;
    chi.N = N;
    chi.d = d;
    chi.fbars = std::move(fbars);
    for (const auto& f : chi.fbars)
        require(f.nvars == d, Err::bad_input, "character polynomial has wrong arity");
    chi.E = SplittingFunction::make(p, a, N);
    return chi;
}

Eisenstein<ZqElement> orbit_exponential_value(const SplittingFunction& E, const ZqElement& A0,
                                              int a, int r) {
    std::vector<ZqElement> A{A0};
    for (int j = 1; j < r; ++j) A.push_back(A.back().frobenius_pow(a));
    ZqElement zero = A0.zero_like();
    std::vector<ZqElement> zv(size_t(E.p() - 1), zero);
    Eisenstein<ZqElement> prod = Eisenstein<ZqElement>{zv}.one_like();
    ZqElement corr = zero;
    for (int j = 0; j < r; ++j) {
        prod = prod * E.eval(A[j]);
        corr = corr + A[j].pow(E.q()) - A[j];
    }
    Eisenstein<ZqElement> pi = Eisenstein<ZqElement>::pi(zero);
    return prod * exp_pdiv(pi * Eisenstein<ZqElement>::from_base(corr));
}

Eisenstein<ZqElement> character_orbit_value(const CharacterData& chi,
                                            const std::vector<FqElem>& xy, int r, ZqPool& pool) {
    require((int)xy.size() == chi.d + chi.s(), Err::bad_input, "point has wrong arity");
    ZqCtx ctx = pool.get(chi.a * r);
    const ZqElement zero(ctx, pool.N());
    // Teichmuller lift coordinatewise (standard lift on every variable)
    std::vector<ZqElement> xhat, yhat;
    for (int i = 0; i < chi.d; ++i) xhat.push_back(teichmuller_rep(ctx, xy[i].coords()));
    for (int i = 0; i < chi.s(); ++i) yhat.push_back(teichmuller_rep(ctx, xy[chi.d + i].coords()));

    ZqElement A0 = zero;
    for (int i = 0; i < chi.s(); ++i) {
        ZqElement fi =
            mp_eval(chi.fbars[i], xhat, zero, [&](u64 c) { return zero.from_int_like((long long)c); });
        A0 = A0 + yhat[i] * fi;
    }
    return orbit_exponential_value(chi.E, A0, chi.a, r);
}

namespace {

EisPadic to_scalar_eis(const Eisenstein<ZqElement>& v) {
    std::vector<PadicInt> c;
    c.reserve(v.coeffs().size());
    for (const auto& x : v.coeffs()) {
        require(x.is_scalar(), Err::internal, "character value did not land in Z_p[pi]");
        c.push_back(x.as_padic());
    }
    return EisPadic{c};
}

} // namespace

bool orbit_product_matches_psi(const CharacterData& chi, const std::vector<FqElem>& xy, int r,
                               ZqPool& pool) {
    Eisenstein<ZqElement> v = character_orbit_value(chi, xy, r, pool);
    // f(x, y) over F_{q^r}
    std::vector<FqElem> xs(xy.begin(), xy.begin() + chi.d);
    FqElem fxy = xy[0].zero_like();
    for (int i = 0; i < chi.s(); ++i) fxy = fxy + xy[chi.d + i] * eval_over_fq(chi.fbars[i], xs);
    EisPadic want = chi.E.psi(fxy);
    return to_scalar_eis(v) == want;
}

EisPadic orthogonality_sum(const CharacterData& chi, const std::vector<FqElem>& x, int r,
                           const EnumBudget& budget) {
    require((int)x.size() == chi.d, Err::bad_input, "x has wrong arity");
    FqCtx ctx = x.empty() ? FqContext::make(chi.p, chi.a * r) : x[0].ctx();
    u64 field = ctx->order();
    u64 total = 1;
    for (int i = 0; i < chi.s(); ++i) {
        require(total <= budget.max_candidates / field, Err::budget_exceeded,
                "orthogonality sum exceeds the budget");
        total *= field;
    }
    std::vector<FqElem> fx;
    for (const auto& f : chi.fbars) fx.push_back(eval_over_fq(f, x));
    EisPadic acc = EisPadic::from_base(PadicInt(chi.p, chi.N, 0));
    for (u64 n = 0; n < total; ++n) {
        u64 t = n;
        FqElem arg = fx.empty() ? FqElem(ctx) : fx[0].zero_like();
        for (int i = 0; i < chi.s(); ++i) {
            FqElem y = FqElem::from_index(ctx, t % field);
            t /= field;
            arg = arg + y * fx[i];
        }
        acc = acc + chi.E.psi(arg);
    }
    return acc;
}

FiberData<EisPadic> CharacterTwistSource::fiber_at(const ClosedPoint& x) const {
    Eisenstein<ZqElement> val = character_orbit_value(*chi, x.rep, x.degree, *pool);
    // ambient rank-1 factor: product of C0 along the x-part of the orbit
    ZqCtx ctx = pool->get(chi->a * x.degree);
    ZqElement zero(ctx, pool->N());
    std::vector<ZqElement> xhat;
    for (int i = 0; i < chi->d; ++i) xhat.push_back(teichmuller_rep(ctx, x.rep[i].coords()));
    ZqElement m0 = zero.one_like();
    for (int j = 0; j < x.degree; ++j) {
        m0 = m0 * mp_eval(C0, xhat, zero, [&](u64 c) { return zero.from_int_like((long long)c); });
        for (auto& c : xhat) c = c.frobenius_pow(chi->a);
    }
    EisPadic value = to_scalar_eis(val * Eisenstein<ZqElement>::from_base(m0));
    auto cp = ts_zero(1, proto());
    cp.c[0] = proto().one_like();
    cp.c[1] = -value;
    return {cp, x.degree, twist_value * x.degree};
}

EisPadic CharacterTwistSource::trace_r(const std::vector<FqElem>& pt, int r) const {
    Eisenstein<ZqElement> val = character_orbit_value(*chi, pt, r, *pool);
    ZqCtx ctx = pool->get(chi->a * r);
    ZqElement zero(ctx, pool->N());
    std::vector<ZqElement> xhat;
    for (int i = 0; i < chi->d; ++i) xhat.push_back(teichmuller_rep(ctx, pt[i].coords()));
    ZqElement m0 = zero.one_like();
    for (int j = 0; j < r; ++j) {
        m0 = m0 * mp_eval(C0, xhat, zero, [&](u64 c) { return zero.from_int_like((long long)c); });
        for (auto& c : xhat) c = c.frobenius_pow(chi->a);
    }
    return to_scalar_eis(val * Eisenstein<ZqElement>::from_base(m0));
}

AffineReductionReport affine_reduction_check(const CharacterData& chi, const MPoly& C0, int twist,
                                             int D, ZqPool& pool, const EnumBudget& budget) {
    AffineReductionReport rep;
    // left side: the module C0 restricted to X = {fbar_i = 0} in A^d
    AffineVariety X;
    X.p = chi.p;
    X.a = chi.a;
    X.d = chi.d;
    X.equations = chi.fbars;
    FModule M = FModule::from_polys(X, chi.N, FrobeniusLift::standard(chi.d, chi.q()), {{C0}});
    M.twist = twist;
    PolyModuleSource left{&M, &pool, budget};
    auto L = l_euler(left, D);

    // right side on A^(d+s), rescaled by t -> t / q^s
    CharacterTwistSource right{&chi, C0, twist, &pool, budget};
    auto R = l_euler(right, D);
    int as = chi.a * chi.s();
    rep.agree_to = D;
    rep.min_prec = 1 << 29;
    for (int k = 0; k <= D; ++k) {
        Scaled<EisPadic> rc = R.c[k];
        rc.den += as * k; // the 1/q^s substitution
        // collapse to Z_p: pi-coordinates above 0 must vanish
        for (int i = 1; i < rc.num.width(); ++i)
            if (!rc.num.coeff(i).is_zero()) rep.ok = false;
        Scaled<PadicInt> rs{rc.num.coeff(0), rc.den};
        Scaled<PadicInt> ls = L.c[k];
        if (!(rs == ls)) {
            rep.ok = false;
            rep.agree_to = std::min(rep.agree_to, k - 1);
            rep.note = "coefficient " + std::to_string(k) + " disagrees";
        }
        rep.min_prec = std::min(rep.min_prec, (int)rs.prec());
    }
    return rep;
}

} // namespace padl
