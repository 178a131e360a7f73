#include "padl/legendre.hpp"

namespace padl {

fp::Poly hasse_poly(u64 p) {
    require(p != 2, Err::bad_input, "the Hasse polynomial needs p odd");
    require(is_prime_u64(p), Err::bad_input, "p must be prime");
    u64 m = (p - 1) / 2;
    // C(m, i) mod p row by row
    fp::Poly h(m + 1, 0);
    u64 binom = 1;
    for (u64 i = 0; i <= m; ++i) {
        h[i] = mulmod(binom, binom, p);
        if (i < m) {
            // binom <- binom * (m - i) / (i + 1): both factors are units mod p here
            binom = mulmod(binom, (m - i) % p, p);
            binom = mulmod(binom, inv_unit_mod((i + 1) % p, p, 1), p);
        }
    }
    return h;
}

namespace {

MPoly hasse_as_mpoly(u64 p, int nvars, int var, u64 mod) {
    fp::Poly h = hasse_poly(p);
    MPoly r = MPoly::zero(nvars);
    for (size_t i = 0; i < h.size(); ++i) {
        std::vector<u32> e(nvars, 0);
        e[var] = (u32)i;
        r = mp_add(r, MPoly::monomial(nvars, e, h[i], mod), mod);
    }
    return r;
}

bool hasse_nonzero(u64 p, const FqElem& lambda) {
    fp::Poly h = hasse_poly(p);
    FqElem acc = lambda.zero_like();
    for (int i = (int)h.size() - 1; i >= 0; --i)
        acc = acc * lambda + FqElem::from_scalar(lambda.ctx(), h[i]);
    return !acc.is_zero();
}

long long count_points(u64 p, const FqElem& lambda, const FqCtx& ctx, const EnumBudget& budget) {
    u64 q = ctx->order();
    require(q <= budget.max_candidates, Err::budget_exceeded, "point count exceeds the budget");
    FqElem one = FqElem::from_scalar(ctx, 1);
    long long affine = 0;
    for (u64 ix = 0; ix < q; ++ix) {
        FqElem x = FqElem::from_index(ctx, ix);
        FqElem f = x * (x - one) * (x - lambda);
        if (f.is_zero()) {
            affine += 1;
            continue;
        }
        // quadratic character by f^((q-1)/2)
        FqElem chi = f.pow((q - 1) / 2);
        if (chi == one) affine += 2;
    }
    return affine + 1; // point at infinity
}

long long count_points_double_loop(u64 p, const FqElem& lambda, const FqCtx& ctx,
                                   const EnumBudget& budget) {
    u64 q = ctx->order();
    require(q <= budget.max_candidates / q, Err::budget_exceeded, "double loop exceeds the budget");
    FqElem one = FqElem::from_scalar(ctx, 1);
    long long affine = 0;
    for (u64 ix = 0; ix < q; ++ix) {
        FqElem x = FqElem::from_index(ctx, ix);
        FqElem f = x * (x - one) * (x - lambda);
        for (u64 iy = 0; iy < q; ++iy) {
            FqElem y = FqElem::from_index(ctx, iy);
            if (y * y == f) ++affine;
        }
    }
    return affine + 1;
}

} // namespace

LegendreFiber legendre_count(u64 p, const FqElem& lambda, int N, int K, const EnumBudget& budget) {
    require(p != 2, Err::bad_input, "the Legendre family needs p odd");
    FqElem one = FqElem::from_scalar(lambda.ctx(), 1);
    require(!lambda.is_zero() && lambda != one, Err::not_on_variety, "lambda must avoid 0 and 1");

    LegendreFiber f;
    f.p = p;
    f.r = lambda.ctx()->deg();
    f.lambda = lambda;
    f.q_lambda = lambda.ctx()->order();

    long long n1 = count_points(p, lambda, lambda.ctx(), budget);
    // independent oracle, affordable on small fields only
    if (f.q_lambda <= 400)
        require(n1 == count_points_double_loop(p, lambda, lambda.ctx(), budget), Err::internal,
                "character-sum count disagrees with the double loop");
    f.trace_a = (long long)f.q_lambda + 1 - n1;
    require(f.trace_a * f.trace_a <= 4 * (long long)f.q_lambda, Err::internal,
            "trace violates the Hasse bound");
    f.ordinary = (f.trace_a % (long long)p) != 0;
    require(f.ordinary == hasse_nonzero(p, lambda), Err::internal,
            "ordinariness disagrees with the Hasse polynomial");

    // higher counts from the recursion s_k = a s_{k-1} - q s_{k-2}
    f.counts.assign(K, 0);
    f.counts[0] = n1;
    long long s_prev = 2, s_cur = f.trace_a;
    long long qpow = (long long)f.q_lambda;
    for (int k = 2; k <= K; ++k) {
        long long s_next = f.trace_a * s_cur - (long long)f.q_lambda * s_prev;
        s_prev = s_cur;
        s_cur = s_next;
        qpow *= (long long)f.q_lambda;
        f.counts[k - 1] = qpow + 1 - s_cur;
    }

    f.charpoly = ts_zero(2, PadicInt(p, N, 0));
    f.charpoly.c[0] = PadicInt(p, N, 1);
    f.charpoly.c[1] = PadicInt::from_int(p, N, -f.trace_a);
    f.charpoly.c[2] = PadicInt(p, N, f.q_lambda % pow_u64(p, N));
    return f;
}

PadicInt unit_root_from_counts(const LegendreFiber& f, int N) {
    require(f.ordinary, Err::supersingular, "unit root requested at a supersingular fiber");
    u64 p = f.p;
    PadicInt a = PadicInt::from_int(p, N, f.trace_a);
    PadicInt q = PadicInt(p, N, f.q_lambda % pow_u64(p, N));
    auto fn = [&](const PadicInt& x) { return x * x - a * x + q; };
    auto dfn = [&](const PadicInt& x) { return x + x - a; };
    return hensel_root(fn, dfn, a.reduced(1), N);
}

std::vector<PadicInt> hypergeometric_half_coeffs(u64 p, int N, long terms) {
    require(p != 2, Err::bad_input, "half-Pochhammer coefficients need p odd");
    std::vector<PadicInt> h;
    h.reserve(terms);
    u64 pk = pow_u64(p, N);
    // (1/2)_i / i! = prod_j (2j-1) / (2^i i!): track unit parts mod p^N and
    // p-exponents separately, so no precision is ever spent.
    u64 num_unit = 1, den_unit = 1;
    long num_v = 0, den_v = 0;
    for (long i = 0; i < terms; ++i) {
        if (i > 0) {
            u64 odd = (u64)(2 * i - 1);
            long v = 0;
            while (odd % p == 0) {
                odd /= p;
                ++v;
            }
            num_unit = mulmod(num_unit, odd % pk, pk);
            num_v += v;
            u64 even = (u64)(2 * i);
            v = 0;
            while (even % p == 0) {
                even /= p;
                ++v;
            }
            den_unit = mulmod(den_unit, even % pk, pk);
            den_v += v;
        }
        long e = 2 * (num_v - den_v);
        require(e >= 0, Err::internal, "hypergeometric coefficient is not integral");
        u64 u = mulmod(num_unit, inv_unit_mod(den_unit, p, N), pk);
        u = mulmod(u, u, pk);
        if (e >= N)
            h.emplace_back(p, N, 0);
        else
            h.emplace_back(p, N, mulmod(u, pow_u64(p, (int)e), pk));
    }
    return h;
}

namespace {

ZqElement eval_series(const std::vector<PadicInt>& coef, long terms, const ZqElement& z) {
    ZqElement acc = z.zero_like();
    for (long i = std::min<long>(terms, (long)coef.size()) - 1; i >= 0; --i)
        acc = acc * z + ZqElement::from_padic(z.ctx(), coef[i]);
    return acc;
}

} // namespace

PadicInt unit_root_series_ratio(u64 p, const FqElem& lambda, int N, ZqPool& pool) {
    require(p != 2, Err::bad_input, "the truncated-ratio route needs p odd");
    require(hasse_nonzero(p, lambda), Err::supersingular,
            "truncated-ratio unit root requested at a supersingular fiber");
    int r = lambda.ctx()->deg();
    require(pool.p() == p && pool.N() >= N, Err::internal, "context pool mismatch");

    long terms_hi = (long)pow_u64(p, N);
    long terms_lo = (long)pow_u64(p, N - 1);
    auto coef = hypergeometric_half_coeffs(p, N, terms_hi);

    ZqCtx ctx = pool.get(r);
    ZqElement lam = teichmuller_rep(ctx, lambda.coords()).reduced(N);
    // Frobenius orbit lam, lam^p, ..., lam^(p^(r-1)); closes up at r
    std::vector<ZqElement> orbit{lam};
    for (int j = 1; j < r; ++j) orbit.push_back(orbit.back().frobenius());

    ZqElement prod = lam.one_like();
    for (int j = 0; j < r; ++j) {
        ZqElement s = eval_series(coef, terms_hi, orbit[j]);
        ZqElement t = eval_series(coef, terms_lo, orbit[(j + 1) % r]);
        require(t.is_unit(), Err::denominator_non_unit,
                "truncated series evaluated to a non-unit");
        prod = prod * s * t.unit_inverse();
    }
    // sign (-1)^((p-1)/2) once per orbit step
    if (((long)r * (long)((p - 1) / 2)) % 2 == 1) prod = -prod;
    require(prod.is_scalar(), Err::internal, "unit-root ratio did not land in Z_p");
    return prod.as_padic().reduced(N);
}

// --- xi / eta growth table -------------------------------------------------

namespace {

using DPoly = std::vector<u64>; // dense over Z/p^n, constant first

DPoly dp_trim(DPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

DPoly dp_mul_window(const DPoly& a, const DPoly& b, u64 m, long W) {
    DPoly r(std::min<long>((long)a.size() + (long)b.size() - 1, W + 1), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size() && i + j < r.size(); ++j)
            r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], m), m);
    }
    return r;
}

// inverse of a constant-term-unit polynomial as a series to degree W
DPoly dp_inverse_series(const DPoly& a, u64 p, int n, long W) {
    u64 m = pow_u64(p, n);
    DPoly r(W + 1, 0);
    u64 inv0 = inv_unit_mod(a[0], p, n);
    r[0] = inv0;
    for (long k = 1; k <= W; ++k) {
        u64 s = 0;
        for (long j = 1; j <= k && j < (long)a.size(); ++j)
            s = addmod(s, mulmod(a[j], r[k - j], m), m);
        r[k] = mulmod(submod(0, s, m), inv0, m);
    }
    return r;
}

// the truncation [alpha]_{p^n} as a dense polynomial mod p^n
DPoly truncated_alpha(u64 p, int n) {
    long terms = (long)pow_u64(p, n);
    auto coef = hypergeometric_half_coeffs(p, n, terms);
    DPoly f(terms, 0);
    for (long i = 0; i < terms; ++i) f[i] = coef[i].value();
    return dp_trim(f);
}

DPoly substitute_power(const DPoly& f, u64 k, long W) {
    DPoly r(std::min<long>((long)(f.size() - 1) * k + 1, W + 1), 0);
    for (size_t i = 0; i < f.size(); ++i)
        if (f[i] && (long)(i * k) <= W) r[i * k] = f[i];
    return r;
}

// minimal e <= emax with series * g^e a polynomial inside the window;
// returns {degree, e} or {0, -1} when none qualifies.
std::pair<int, int> minimal_poly_rep(DPoly series, const DPoly& g, u64 m, long W, int emax) {
    long slack = std::max<long>(4, (long)g.size());
    for (int e = 0; e <= emax; ++e) {
        long d = (long)dp_trim(series).size() - 1;
        if (d >= 0 && d + slack <= W) return {(int)d, e};
        if (d < 0) return {0, e};
        series = dp_mul_window(series, g, m, W);
    }
    return {0, -1};
}

} // namespace

XiEtaReport xi_eta_diagnostic(u64 p, int N) {
    require(p != 2, Err::bad_input, "the diagnostic needs p odd");
    XiEtaReport rep;
    rep.p = p;
    rep.N = N;
    fp::Poly h = hasse_poly(p);
    for (int n = 1; n <= N; ++n) {
        u64 m = pow_u64(p, n);
        long Pn = (long)pow_u64(p, n);
        long W = 2 * Pn + (long)p + 4;
        DPoly g; // lambda (1 - lambda) H_p(lambda) mod p^n
        {
            DPoly lam{0, 1}, oneml{1, m - 1};
            DPoly hh(h.size(), 0);
            for (size_t i = 0; i < h.size(); ++i) hh[i] = h[i] % m;
            g = dp_mul_window(dp_mul_window(lam, oneml, m, W), hh, m, W);
        }
        int emax = 12 * n + 12;

        // ratio rows: the exact representative is the truncation pair itself
        DPoly top = truncated_alpha(p, n);
        DPoly botraw = n >= 2 ? truncated_alpha(p, n - 1) : DPoly{1};
        for (auto& c : botraw) c %= m;
        for (auto& c : top) c %= m;
        DPoly bot = substitute_power(botraw, p, W);
        int xnum = (int)dp_trim(top).size() - 1;
        int xden = (int)dp_trim(bot).size() - 1;
        bool xok = xnum <= (int)(Pn - 1) && xden <= (int)(Pn - (long)p);
        if (n == 1) xok = xnum <= (int)(p - 1) / 2 && xden == 0;
        rep.xi.push_back({n, xnum, xden, 0, xok});

        // eta rows: -T' / T; hunt the minimal g-exponent clearing the pole
        DPoly dT(top.size() > 1 ? top.size() - 1 : 1, 0);
        for (size_t i = 1; i < top.size(); ++i) dT[i - 1] = mulmod(top[i], (u64)(i % m), m);
        for (auto& c : dT) c = submod(0, c, m);
        DPoly eta = dp_mul_window(dT, dp_inverse_series(top, p, n, W), m, W);
        auto [ed, ee] = minimal_poly_rep(eta, g, m, W, emax);
        rep.eta.push_back({n, ed, (int)dp_trim(top).size() - 1, ee, true});
    }
    return rep;
}

// --- L-series source --------------------------------------------------------

AffineVariety LegendreSource::family() const {
    AffineVariety V;
    V.p = p;
    V.a = 1;
    V.d = 1;
    u64 m = pow_u64(p, N);
    MPoly lam = MPoly::variable(1, 0);
    MPoly oneml = mp_sub(MPoly::constant(1, 1, m), lam, m);
    V.inverted = mp_mul(mp_mul(lam, oneml, m), hasse_as_mpoly(p, 1, 0, m), m);
    return V;
}

std::vector<ClosedPoint> LegendreSource::closed_points(int Dmax) const {
    return closed_points_up_to(family(), Dmax, budget);
}

const LegendreFiber& LegendreSource::counted(const FqElem& lambda) const {
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(lambda.index(), lambda.ctx()->deg());
    auto it = cache->find(key);
    if (it == cache->end()) it = cache->emplace(key, legendre_count(p, lambda, N, 1, budget)).first;
    return it->second;
}

FiberData<PadicInt> LegendreSource::fiber_at(const ClosedPoint& x) const {
    const LegendreFiber& f = counted(x.rep[0]);
    return {f.charpoly, x.degree, 0};
}

FiberFrobenius LegendreSource::full_fiber(const ClosedPoint& x) const {
    const LegendreFiber& f = counted(x.rep[0]);
    FiberFrobenius fib;
    fib.point = x;
    fib.r = x.degree;
    fib.a = 1;
    fib.charpoly = f.charpoly;
    fib.twist_per_deg = 0;
    return fib;
}

std::vector<std::vector<FqElem>> LegendreSource::points(int r) const {
    return points_over(family(), r, budget);
}

PadicInt LegendreSource::trace_r(const std::vector<FqElem>& pt, int r) const {
    // trace of the r-fold Frobenius at lambda given over F_{p^r}: directly
    // p^r + 1 - #X_lambda(F_{p^r}), counted in the presented field.
    require(pt[0].ctx()->deg() == r, Err::internal, "point presented in the wrong field");
    return PadicInt::from_int(p, N, counted(pt[0]).trace_a);
}

} // namespace padl
