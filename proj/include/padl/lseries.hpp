#pragma once

#include <atomic>
#include <string>

#include "padl/fmodule.hpp"
#include "padl/scaled.hpp"
#include "padl/util.hpp"

namespace padl {

struct Rational {
    long n = 0;
    long d = 1;

    static Rational of(long n, long d);
    friend bool operator==(const Rational& a, const Rational& b) { return a.n == b.n && a.d == b.d; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return (__int128)a.n * b.d < (__int128)b.n * a.d; }
    std::string str() const { return d == 1 ? std::to_string(n) : std::to_string(n) + "/" + std::to_string(d); }
};

// Lower convex hull of (index, valuation); slope list carries multiplicities
// (horizontal lengths).  Valuations are in whatever normalization the caller
// chose; `normalization` records it for output.
struct NewtonPolygon {
    std::vector<std::pair<int, long>> pts;      // certified points (raw v_p)
    std::vector<std::pair<int, long>> vertices; // hull vertices
    std::vector<std::pair<Rational, int>> slopes;
    int effdeg = 0;
    std::string normalization;
};

// Polygon of a constant-term-1 polynomial over Z_p (raw v_p slopes).
// Coefficients that vanish at their precision contribute no point but must
// lie on or above the hull, else the polygon is not certified.
NewtonPolygon newton_polygon(const TruncSeries<PadicInt>& P);

// Polygon of an L-series over Scaled coefficients (ord(p) = 1).
NewtonPolygon newton_polygon_series(const TruncSeries<Scaled<PadicInt>>& L);

// Factor a constant-term-1 polynomial into its Newton-slope pieces by
// Hensel-lifting the reduction split at each integral-slope end of the
// polygon.  Keys are raw v_p slopes of the inverse roots, ascending.
std::vector<std::pair<Rational, TruncSeries<PadicInt>>> slope_factors(const TruncSeries<PadicInt>& P);

// det_alpha: the factor of a fiber's characteristic polynomial whose inverse
// roots have normalized valuation alpha, with ord(q^deg x) = 1 and the
// twist's eigenvalue scale included.
TruncSeries<PadicInt> det_alpha(const FiberFrobenius& fib, const Rational& alpha);

// All slope factors of a fiber in the same normalization.
std::vector<std::pair<Rational, TruncSeries<PadicInt>>> fiber_slope_factors(const FiberFrobenius& fib);

// prod over inverse roots a_j of (1 - a_j^r T), computed as the resultant
// Res_z(rev(f)(z), 1 - T z^r): no root extraction, no divisions.
TruncSeries<PadicInt> power_transform(const TruncSeries<PadicInt>& f, int r);

template <class R>
struct FiberData {
    TruncSeries<R> cp;     // det(1 - T Phi) at the point, constant term 1
    int r = 1;             // degree of the point
    int twist_per_deg = 0; // raw p-exponent carried by each eigenvalue
};

// --- Sources -------------------------------------------------------------
// An L-series source provides closed points and fibers.  The polynomial
// F-module source is the main one; the Legendre family and character-twisted
// modules provide their own.

struct PolyModuleSource {
    using Coeff = PadicInt;
    const FModule* M;
    ZqPool* pool;
    EnumBudget budget{};
    int workers = 1;

    Coeff proto() const { return PadicInt(M->base.p, pool->N(), 0); }
    int dim_x() const { return M->base.d - (int)M->base.equations.size(); }
    int twist() const { return M->twist; }

    std::vector<ClosedPoint> closed_points(int Dmax) const {
        return closed_points_up_to(M->base, Dmax, budget);
    }
    FiberData<Coeff> fiber_at(const ClosedPoint& x) const {
        FiberFrobenius f = fiber(*M, x, *pool);
        return {f.charpoly, f.r, f.twist_per_deg};
    }
    FiberFrobenius full_fiber(const ClosedPoint& x) const { return fiber(*M, x, *pool); }
    std::vector<std::vector<FqElem>> points(int r) const { return points_over(M->base, r, budget); }
    Coeff trace_r(const std::vector<FqElem>& pt, int r) const {
        Mat<ZqElement> Phi = orbit_frobenius_matrix(*M, pt, r, *pool);
        ZqElement t = mat_trace(Phi);
        require(t.is_scalar(), Err::internal, "fiber trace is not sigma-invariant");
        return t.as_padic();
    }
};

// --- Generic constructions ------------------------------------------------

template <class R>
Scaled<R> apply_twist(const R& v, int e) {
    if (e >= 0) return Scaled<R>{v.shifted_up(e), 0};
    return Scaled<R>{v, -e};
}

// Euler product over closed points of degree <= D.
template <class Src>
TruncSeries<Scaled<typename Src::Coeff>> l_euler(const Src& src, int D) {
    using C = typename Src::Coeff;
    Scaled<C> proto{src.proto(), 0};
    auto pts = src.closed_points(D);
    std::vector<FiberData<C>> fibs(pts.size(), FiberData<C>{ts_zero(0, src.proto()), 1, 0});
    parallel_for((int)pts.size(), src.workers, [&](int i) { fibs[i] = src.fiber_at(pts[i]); });
    auto L = ts_one(D, proto);
    for (const auto& fib : fibs) {
        if (fib.r > D) continue;
        auto factor = ts_one(D, proto);
        for (int k = 1; k <= fib.cp.trunc(); ++k) {
            long idx = (long)k * fib.r;
            if (idx > D) break;
            factor.c[idx] = apply_twist(fib.cp.c[k], k * fib.twist_per_deg);
        }
        L = ts_mul(L, ts_inverse(factor));
    }
    return L;
}

// exp(sum_r S_r t^r / r) with S_r the sum of fiber traces over all
// F_{q^r}-points (not grouped into orbits: an independent route).
template <class Src>
TruncSeries<Scaled<typename Src::Coeff>> l_expsum(const Src& src, int D) {
    using C = typename Src::Coeff;
    Scaled<C> proto{src.proto(), 0};
    auto S = ts_zero(D, proto);
    for (int r = 1; r <= D; ++r) {
        auto pts = src.points(r);
        std::vector<C> traces(pts.size(), src.proto());
        parallel_for((int)pts.size(), src.workers, [&](int i) { traces[i] = src.trace_r(pts[i], r); });
        C tot = src.proto();
        for (const auto& t : traces) tot = tot + t;
        S.c[r] = apply_twist(tot, src.twist() * r).divexact_int(r);
    }
    return ts_exp(S);
}

// Slope-alpha part of the Euler product (PadicInt sources only).
template <class Src>
TruncSeries<Scaled<PadicInt>> l_alpha(const Src& src, const Rational& alpha, int D) {
    Scaled<PadicInt> proto{src.proto(), 0};
    auto pts = src.closed_points(D);
    auto L = ts_one(D, proto);
    for (const auto& x : pts) {
        if (x.degree > D) continue;
        FiberFrobenius fib = src.full_fiber(x);
        TruncSeries<PadicInt> f = det_alpha(fib, alpha);
        auto factor = ts_one(D, proto);
        for (int k = 1; k <= f.trunc(); ++k) {
            long idx = (long)k * fib.r;
            if (idx > D) break;
            factor.c[idx] = Scaled<PadicInt>::wrap(f.c[k]);
        }
        L = ts_mul(L, ts_inverse(factor));
    }
    return L;
}

// L^{(r)}: Euler product with r-th power eigenvalues (5.1.5)-(5.1.8 analog);
// alpha = nullptr for the full product, else the slope-alpha part.
template <class Src>
TruncSeries<Scaled<PadicInt>> l_power(const Src& src, int rpow, const Rational* alpha, int D) {
    Scaled<PadicInt> proto{src.proto(), 0};
    auto pts = src.closed_points(D);
    auto L = ts_one(D, proto);
    for (const auto& x : pts) {
        if (x.degree > D) continue;
        FiberFrobenius fib = src.full_fiber(x);
        TruncSeries<PadicInt> base = alpha ? det_alpha(fib, *alpha) : fib.charpoly;
        TruncSeries<PadicInt> f = power_transform(base, rpow);
        auto factor = ts_one(D, proto);
        for (int k = 1; k <= f.trunc(); ++k) {
            long idx = (long)k * fib.r;
            if (idx > D) break;
            factor.c[idx] = apply_twist(f.c[k], k * fib.twist_per_deg * rpow);
        }
        L = ts_mul(L, ts_inverse(factor));
    }
    return L;
}

struct IntegralityReport {
    bool applicable = true; // false when the source is negatively twisted
    bool integral = true;
    int first_violation = -1;
    std::string note;
};

// L^((-1)^(dim X - 1)) must have p-integral coefficients.
IntegralityReport integrality_check(const TruncSeries<Scaled<PadicInt>>& L, int dim_x,
                                    int source_twist);

struct WeierstrassReport {
    NewtonPolygon series_polygon;
    std::vector<Scaled<PadicInt>> char_sums; // S_k = coefficients of t L'/L
    bool has_candidate = false;
    TruncSeries<Scaled<PadicInt>> numerator{{}};   // prod (1 - alpha_i t)
    TruncSeries<Scaled<PadicInt>> denominator{{}}; // prod (1 - beta_j t)
    int agree_to = -1; // S_k reconstruction agreement degree
};

// Newton polygon of the series, its character sums S_k, and a rational
// numerator/denominator candidate recovered by a small Pade scan, with the
// power-sum reconstruction S_k = sum beta^k - sum alpha^k checked against
// the series' own S_k.
WeierstrassReport weierstrass_export(const TruncSeries<Scaled<PadicInt>>& L);

// Character sums S_k of a series with constant term 1 (t L'/L).
std::vector<Scaled<PadicInt>> char_sums_of(const TruncSeries<Scaled<PadicInt>>& L);

} // namespace padl
