#include "padl/lseries.hpp"

#include <numeric>
#include <optional>

namespace padl {

Rational Rational::of(long n, long d) {
    require(d != 0, Err::internal, "rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational{n, d};
}

namespace {

// Effective degree: the last index whose coefficient is provably nonzero.
int effective_degree(const TruncSeries<PadicInt>& P) {
    for (int k = P.trunc(); k >= 1; --k) {
        bool atp = false;
        (void)P.c[k].valuation(&atp);
        if (!atp) return k;
    }
    return 0;
}

struct ValPoint {
    int k;
    long v;
    bool atp;
};

std::vector<ValPoint> coefficient_valuations(const TruncSeries<PadicInt>& P, int m) {
    std::vector<ValPoint> vals;
    for (int k = 0; k <= m; ++k) {
        bool atp = false;
        long v = P.c[k].valuation(&atp);
        vals.push_back({k, v, atp});
    }
    return vals;
}

std::vector<std::pair<int, long>> lower_hull(const std::vector<std::pair<int, long>>& pts) {
    std::vector<std::pair<int, long>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // drop b if it is above segment a-p
            __int128 lhs = (__int128)(b.second - a.second) * (p.first - a.first);
            __int128 rhs = (__int128)(p.second - a.second) * (b.first - a.first);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

} // namespace

NewtonPolygon newton_polygon(const TruncSeries<PadicInt>& P) {
    require(P.c[0] == P.c[0].one_like(), Err::internal, "polygon of a polynomial without constant term 1");
    NewtonPolygon np;
    np.effdeg = effective_degree(P);
    auto vals = coefficient_valuations(P, np.effdeg);
    for (const auto& v : vals)
        if (!v.atp) np.pts.push_back({v.k, v.v});
    np.vertices = lower_hull(np.pts);
    // at-precision coefficients must not dip below the certified hull
    for (const auto& v : vals) {
        if (!v.atp) continue;
        for (size_t i = 0; i + 1 < np.vertices.size(); ++i) {
            auto [k1, v1] = np.vertices[i];
            auto [k2, v2] = np.vertices[i + 1];
            if (v.k <= k1 || v.k >= k2) continue;
            // hull height at v.k times (k2-k1)
            __int128 hull2 = (__int128)v1 * (k2 - k1) + (__int128)(v2 - v1) * (v.k - k1);
            require((__int128)v.v * (k2 - k1) >= hull2, Err::segment_split_failed,
                    "coefficient precision too low to certify the Newton polygon");
        }
    }
    for (size_t i = 0; i + 1 < np.vertices.size(); ++i) {
        auto [k1, v1] = np.vertices[i];
        auto [k2, v2] = np.vertices[i + 1];
        np.slopes.push_back({Rational::of(v2 - v1, k2 - k1), k2 - k1});
    }
    np.normalization = "ord(p) = 1";
    return np;
}

NewtonPolygon newton_polygon_series(const TruncSeries<Scaled<PadicInt>>& L) {
    NewtonPolygon np;
    np.effdeg = L.trunc();
    for (int k = 0; k <= L.trunc(); ++k) {
        bool atp = false;
        long v = L.c[k].valuation(&atp);
        if (!atp) np.pts.push_back({k, v});
    }
    np.vertices = lower_hull(np.pts);
    for (size_t i = 0; i + 1 < np.vertices.size(); ++i) {
        auto [k1, v1] = np.vertices[i];
        auto [k2, v2] = np.vertices[i + 1];
        np.slopes.push_back({Rational::of(v2 - v1, k2 - k1), k2 - k1});
    }
    np.normalization = "ord(p) = 1";
    return np;
}

// --- Z/p^n polynomial helpers for the Hensel split ------------------------

namespace {

using UPoly = std::vector<u64>; // dense, constant first

UPoly up_trim(UPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int up_deg(const UPoly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i]) return i;
    return -1;
}

UPoly up_mul(const UPoly& a, const UPoly& b, u64 m) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], m), m);
    }
    return up_trim(r);
}

UPoly up_add(const UPoly& a, const UPoly& b, u64 m) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = addmod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, m);
    return up_trim(r);
}

UPoly up_sub(const UPoly& a, const UPoly& b, u64 m) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = submod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, m);
    return up_trim(r);
}

// divide by a monic divisor
void up_divmod_monic(const UPoly& a, const UPoly& d, u64 m, UPoly& q, UPoly& r) {
    r = up_trim(a);
    int dd = up_deg(d);
    require(dd >= 0 && d[dd] == 1, Err::internal, "division by a non-monic polynomial");
    q.assign(r.size() > (size_t)dd ? r.size() - dd : 1, 0);
    while (up_deg(r) >= dd) {
        int dr = up_deg(r);
        u64 c = r[dr];
        q[dr - dd] = addmod(q[dr - dd], c, m);
        for (int i = 0; i <= dd; ++i) r[dr - dd + i] = submod(r[dr - dd + i], mulmod(c, d[i], m), m);
        r = up_trim(r);
    }
    q = up_trim(q);
}

// extended gcd over F_p for the initial Bezout pair
void fp_ext_gcd(UPoly a, UPoly b, u64 p, UPoly& s, UPoly& t) {
    UPoly s0{1}, s1{}, t0{}, t1{1};
    a = up_trim(a);
    b = up_trim(b);
    while (up_deg(b) >= 0) {
        UPoly q, r;
        // monic-ize divisor on the fly
        u64 lead = b[up_deg(b)];
        u64 linv = inv_unit_mod(lead, p, 1);
        UPoly bm = b;
        for (auto& c : bm) c = mulmod(c, linv, p);
        up_divmod_monic(a, bm, p, q, r);
        for (auto& c : q) c = mulmod(c, linv, p);
        // (a, b) <- (b, a - q b)
        UPoly na = b, nb = up_sub(a, up_mul(q, b, p), p);
        UPoly ns0 = s1, ns1 = up_sub(s0, up_mul(q, s1, p), p);
        UPoly nt0 = t1, nt1 = up_sub(t0, up_mul(q, t1, p), p);
        a = na;
        b = nb;
        s0 = ns0;
        s1 = ns1;
        t0 = nt0;
        t1 = nt1;
    }
    int da = up_deg(a);
    require(da == 0, Err::segment_split_failed, "reduction factors are not coprime");
    u64 inv = inv_unit_mod(a[0], p, 1);
    s = s0;
    t = t0;
    for (auto& c : s) c = mulmod(c, inv, p);
    for (auto& c : t) c = mulmod(c, inv, p);
}

// Hensel: lift the coprime monic factorization f = g h from mod p to mod p^n.
void hensel_lift_monic(const UPoly& f, UPoly& g, UPoly& h, UPoly& s, UPoly& t, u64 p, int n) {
    u64 m = pow_u64(p, n);
    for (int have = 1; have < n; have *= 2) {
        UPoly e = up_sub(f, up_mul(g, h, m), m);
        UPoly q, r;
        up_divmod_monic(up_mul(s, e, m), h, m, q, r);
        UPoly gstar = up_add(g, up_add(up_mul(t, e, m), up_mul(q, g, m), m), m);
        UPoly hstar = up_add(h, r, m);
        UPoly b = up_sub(up_add(up_mul(s, gstar, m), up_mul(t, hstar, m), m), UPoly{1}, m);
        UPoly c, d;
        up_divmod_monic(up_mul(s, b, m), hstar, m, c, d);
        UPoly sstar = up_sub(s, d, m);
        UPoly tstar = up_sub(t, up_add(up_mul(t, b, m), up_mul(c, gstar, m), m), m);
        g = gstar;
        h = hstar;
        s = sstar;
        t = tstar;
    }
    require(up_sub(f, up_mul(g, h, m), m).empty(), Err::internal, "Hensel lift failed to converge");
}

int min_prec(const TruncSeries<PadicInt>& P, int m) {
    int n = P.c[0].prec();
    for (int k = 0; k <= m; ++k) n = std::min(n, P.c[k].prec());
    return n;
}

// Split a constant-term-1 polynomial with unit roots and positive-valuation
// roots into the two corresponding factors (U, R), U carrying the units.
std::pair<TruncSeries<PadicInt>, TruncSeries<PadicInt>> unit_split(const TruncSeries<PadicInt>& Q,
                                                                   int m) {
    u64 p = Q.c[0].p();
    int n = min_prec(Q, m);
    u64 pk = pow_u64(p, n);
    // reversed polynomial: monic, roots = inverse roots of Q
    UPoly Pstar(m + 1, 0);
    for (int k = 0; k <= m; ++k) Pstar[k] = Q.c[m - k].reduced(n).value() % pk;
    require(Pstar[m] == 1, Err::internal, "reversed polynomial is not monic");
    int z = 0;
    while (z <= m && Pstar[z] % p == 0) ++z;
    require(z > 0 && z < m, Err::internal, "unit split called on a single-slope polynomial");

    UPoly g(z + 1, 0); // T^z
    g[z] = 1;
    UPoly h(m - z + 1, 0);
    for (int k = 0; k <= m - z; ++k) h[k] = Pstar[z + k] % p;
    require(h[m - z] == 1, Err::internal, "unit factor is not monic mod p");
    UPoly s, t;
    fp_ext_gcd(g, h, p, s, t);
    hensel_lift_monic(Pstar, g, h, s, t, p, n);

    int k0 = m - z;
    auto U = ts_zero(k0, PadicInt(p, n, 0));
    for (int k = 0; k <= k0; ++k) U.c[k] = PadicInt(p, n, k0 - k < (int)h.size() ? h[k0 - k] : 0);
    auto R = ts_zero(z, PadicInt(p, n, 0));
    for (int k = 0; k <= z; ++k) R.c[k] = PadicInt(p, n, z - k < (int)g.size() ? g[z - k] : 0);
    require(U.c[0] == U.c[0].one_like() && R.c[0] == R.c[0].one_like(), Err::internal,
            "split factors lost their unit constant terms");
    return {U, R};
}

PadicInt shift_value(const PadicInt& x, long e) {
    if (e >= 0) return x.shifted_up((int)e);
    return x.divexact_p_pow((int)-e);
}

// Multiply a polynomial known to divide `num` into the quotient num / den,
// exact: den has constant term 1.
TruncSeries<PadicInt> exact_quotient(const TruncSeries<PadicInt>& num,
                                     const TruncSeries<PadicInt>& den, int out_deg) {
    auto wide_den = ts_zero(num.trunc(), num.c[0]);
    for (int k = 0; k <= den.trunc() && k <= num.trunc(); ++k) wide_den.c[k] = den.c[k];
    auto q = ts_mul(num, ts_inverse(wide_den));
    auto out = ts_zero(out_deg, num.c[0]);
    for (int k = 0; k <= out_deg; ++k) out.c[k] = q.c[k];
    return out;
}

} // namespace

std::vector<std::pair<Rational, TruncSeries<PadicInt>>> slope_factors(const TruncSeries<PadicInt>& P) {
    std::vector<std::pair<Rational, TruncSeries<PadicInt>>> out;
    // Coefficients past the effective degree vanish at their precision;
    // treating them as absent is only sound when any root hiding there would
    // have slope at least as large as every extracted one.
    {
        int m = effective_degree(P);
        if (m < P.trunc() && m > 0) {
            bool atp = false;
            long vm = P.c[m].valuation(&atp);
            auto full = ts_zero(m, P.c[0]);
            for (int k = 0; k <= m; ++k) full.c[k] = P.c[k];
            NewtonPolygon np = newton_polygon(full);
            long smax_n = np.slopes.back().first.n, smax_d = np.slopes.back().first.d;
            for (int k = m + 1; k <= P.trunc(); ++k) {
                long budget = (long)P.c[k].prec() - vm;
                require((__int128)budget * smax_d >= (__int128)smax_n * (k - m),
                        Err::segment_split_failed,
                        "trailing coefficients vanish at too low a precision to certify the slopes");
            }
        }
    }
    TruncSeries<PadicInt> Q = P;
    for (;;) {
        int m = effective_degree(Q);
        if (m == 0) break;
        // view Q as its effective-degree polynomial
        auto Qm = ts_zero(m, Q.c[0]);
        for (int k = 0; k <= m; ++k) Qm.c[k] = Q.c[k];
        NewtonPolygon np = newton_polygon(Qm);
        require(!np.slopes.empty(), Err::internal, "degenerate polygon");
        if (np.slopes.size() == 1) {
            out.push_back({np.slopes[0].first, Qm});
            break;
        }
        Rational lo = np.slopes.front().first;
        Rational hi = np.slopes.back().first;
        if (lo.d == 1) {
            long j = lo.n;
            auto scaled = ts_zero(m, Qm.c[0]);
            for (int k = 0; k <= m; ++k) scaled.c[k] = shift_value(Qm.c[k], -j * k);
            auto [U, R] = unit_split(scaled, m);
            auto F = ts_zero(U.trunc(), U.c[0]);
            for (int k = 0; k <= U.trunc(); ++k) F.c[k] = shift_value(U.c[k], j * k);
            out.push_back({Rational::of(j, 1), F});
            Q = ts_zero(R.trunc(), R.c[0]);
            for (int k = 0; k <= R.trunc(); ++k) Q.c[k] = shift_value(R.c[k], j * k);
            continue;
        }
        if (hi.d == 1) {
            long h = hi.n;
            bool atp = false;
            long vm = Qm.c[m].valuation(&atp);
            require(!atp, Err::internal, "effective degree coefficient vanished");
            PadicInt u = Qm.c[m].divexact_p_pow((int)vm);
            PadicInt uinv = u.unit_inverse();
            auto Qrev = ts_zero(m, Qm.c[0]);
            for (int k = 0; k <= m; ++k)
                Qrev.c[k] = shift_value(Qm.c[m - k], h * k - vm) * uinv;
            auto [U, R] = unit_split(Qrev, m);
            (void)R;
            int kt = U.trunc();
            PadicInt lead_inv = U.c[kt].unit_inverse();
            auto F = ts_zero(kt, U.c[0]);
            for (int k = 0; k <= kt; ++k) F.c[k] = shift_value(U.c[kt - k] * lead_inv, h * k);
            out.push_back({Rational::of(h, 1), F});
            Q = exact_quotient(Qm, F, m - kt);
            continue;
        }
        fail(Err::segment_split_failed,
             "polygon has several segments but no integral extreme slope to split at");
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<std::pair<Rational, TruncSeries<PadicInt>>> fiber_slope_factors(const FiberFrobenius& fib) {
    auto raw = slope_factors(fib.charpoly);
    std::vector<std::pair<Rational, TruncSeries<PadicInt>>> out;
    long scale = (long)fib.a * fib.r;
    for (auto& [s, f] : raw)
        out.push_back({Rational::of(s.n + (long)fib.twist_per_deg * s.d, s.d * scale), f});
    return out;
}

TruncSeries<PadicInt> det_alpha(const FiberFrobenius& fib, const Rational& alpha) {
    auto factors = fiber_slope_factors(fib);
    for (auto& [s, f] : factors)
        if (s == alpha) return f;
    return ts_one(0, fib.charpoly.c[0]);
}

TruncSeries<PadicInt> power_transform(const TruncSeries<PadicInt>& f, int r) {
    require(r >= 1, Err::bad_input, "power transform needs r >= 1");
    int m = effective_degree(f);
    if (r == 1) {
        auto out = ts_zero(m, f.c[0]);
        for (int k = 0; k <= m; ++k) out.c[k] = f.c[k];
        return out;
    }
    if (m == 0) return ts_one(0, f.c[0]);
    using S = TruncSeries<PadicInt>;
    const PadicInt proto = f.c[0].zero_like();
    auto sconst = [&](const PadicInt& v) {
        auto s = ts_zero(m, proto);
        s.c[0] = v;
        return s;
    };
    int n = m + r;
    Mat<S> syl = Mat<S>::filled(n, n, ts_zero(m, proto));
    // rows 0..r-1: coefficients of rev(f), degree-descending, shifted
    for (int i = 0; i < r; ++i)
        for (int k = 0; k <= m; ++k) syl.at(i, i + k) = sconst(f.c[k]);
    // rows r..r+m-1: coefficients of 1 - T z^r, descending: -T, 0, ..., 0, 1
    for (int i = 0; i < m; ++i) {
        auto mt = ts_zero(m, proto);
        mt.c[1] = -proto.one_like();
        syl.at(r + i, i) = mt;
        syl.at(r + i, i + r) = sconst(proto.one_like());
    }
    S det = leibniz_det(syl);
    require(det.c[0] == proto.one_like(), Err::internal, "power transform lost its constant term");
    return det;
}

IntegralityReport integrality_check(const TruncSeries<Scaled<PadicInt>>& L, int dim_x,
                                    int source_twist) {
    IntegralityReport rep;
    if (source_twist < 0) {
        rep.applicable = false;
        rep.note = "module carries a negative twist; integrality statement does not apply";
        return rep;
    }
    bool invert = ((dim_x - 1) % 2) != 0;
    auto T = invert ? ts_inverse(L) : L;
    for (int k = 0; k <= T.trunc(); ++k) {
        bool und = false;
        if (!T.c[k].is_integral(&und)) {
            if (und) {
                rep.note = "coefficient " + std::to_string(k) + " undecidable at this precision";
                continue;
            }
            rep.integral = false;
            rep.first_violation = k;
            return rep;
        }
    }
    return rep;
}

std::vector<Scaled<PadicInt>> char_sums_of(const TruncSeries<Scaled<PadicInt>>& L) {
    int D = L.trunc();
    auto dL = ts_zero(D, L.c[0]);
    for (int k = 0; k < D; ++k) dL.c[k] = L.c[k + 1].from_int_like(k + 1) * L.c[k + 1];
    auto w = ts_mul(dL, ts_inverse(L));
    std::vector<Scaled<PadicInt>> S(D + 1, L.c[0].zero_like());
    for (int k = 1; k <= D; ++k) S[k] = w.c[k - 1];
    return S;
}

namespace {

// inverse of any provably nonzero scaled value
Scaled<PadicInt> scaled_inverse(const Scaled<PadicInt>& x) {
    bool atp = false;
    long v = x.num.valuation(&atp);
    require(!atp, Err::denominator_non_unit, "inverse of a value that vanishes at precision");
    PadicInt u = x.num.divexact_p_pow((int)v);
    long e = (long)x.den - v; // x = u p^{-e}
    Scaled<PadicInt> r{u.unit_inverse(), 0};
    if (e >= 0)
        r.num = r.num.shifted_up((int)e);
    else
        r.den = (int)-e;
    return r;
}

// Solve a small square system by elimination with most-unit pivoting.
std::optional<std::vector<Scaled<PadicInt>>> solve_linear(Mat<Scaled<PadicInt>> A,
                                                          std::vector<Scaled<PadicInt>> b) {
    int n = A.rows;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int col = 0; col < n; ++col) {
        int best = -1;
        long bestv = 0;
        for (int row = col; row < n; ++row) {
            bool atp = false;
            long v = A.at(row, col).valuation(&atp);
            if (atp) continue;
            if (best < 0 || v < bestv) {
                best = row;
                bestv = v;
            }
        }
        if (best < 0) return std::nullopt;
        for (int j = 0; j < n; ++j) std::swap(A.at(col, j), A.at(best, j));
        std::swap(b[col], b[best]);
        Scaled<PadicInt> pinv = scaled_inverse(A.at(col, col));
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            Scaled<PadicInt> f = A.at(row, col) * pinv;
            for (int j = col; j < n; ++j) A.at(row, j) = A.at(row, j) - f * A.at(col, j);
            b[row] = b[row] - f * b[col];
        }
    }
    std::vector<Scaled<PadicInt>> x(n, b.empty() ? Scaled<PadicInt>{} : b[0].zero_like());
    for (int i = 0; i < n; ++i) x[i] = b[i] * scaled_inverse(A.at(i, i));
    return x;
}

// division-free power sums of the inverse roots of 1 + c1 t + ... (Newton)
std::vector<Scaled<PadicInt>> inverse_root_power_sums(const TruncSeries<Scaled<PadicInt>>& C, int K) {
    std::vector<Scaled<PadicInt>> p(K + 1, C.c[0].zero_like());
    for (int k = 1; k <= K; ++k) {
        Scaled<PadicInt> ck = k <= C.trunc() ? C.c[k] : C.c[0].zero_like();
        Scaled<PadicInt> acc = ck.from_int_like(-(long long)k) * ck;
        for (int i = 1; i < k; ++i) {
            Scaled<PadicInt> ci = i <= C.trunc() ? C.c[i] : C.c[0].zero_like();
            acc = acc - ci * p[k - i];
        }
        p[k] = acc;
    }
    return p;
}

} // namespace

WeierstrassReport weierstrass_export(const TruncSeries<Scaled<PadicInt>>& L) {
    WeierstrassReport rep;
    rep.series_polygon = newton_polygon_series(L);
    rep.char_sums = char_sums_of(L);
    int D = L.trunc();
    require(D >= 2, Err::insufficient_degree, "truncation too short for any reconstruction");

    auto proto = L.c[0].zero_like();
    int cap = std::min(6, D - 1);
    for (int total = 0; total <= 2 * cap && !rep.has_candidate; ++total) {
        for (int dB = 0; dB <= std::min(total, cap) && !rep.has_candidate; ++dB) {
            int dA = total - dB;
            if (dA > cap || dA + dB > D) continue;
            // unknowns b_1..b_dB with coeff_k(B L) = 0 for k = dA+1 .. dA+dB
            Mat<Scaled<PadicInt>> A = Mat<Scaled<PadicInt>>::filled(dB, dB, proto);
            std::vector<Scaled<PadicInt>> rhs(dB, proto);
            for (int e = 0; e < dB; ++e) {
                int k = dA + 1 + e;
                for (int i = 1; i <= dB; ++i)
                    A.at(e, i - 1) = k - i >= 0 ? L.c[k - i] : proto;
                rhs[e] = -L.c[k];
            }
            std::vector<Scaled<PadicInt>> bco;
            if (dB == 0)
                bco = {};
            else {
                auto sol = solve_linear(A, rhs);
                if (!sol) continue;
                bco = *sol;
            }
            auto B = ts_zero(D, proto);
            B.c[0] = proto.one_like();
            for (int i = 1; i <= dB; ++i) B.c[i] = bco[i - 1];
            auto prod = ts_mul(B, L);
            bool ok = true;
            for (int k = dA + 1; k <= D && ok; ++k) ok = prod.c[k].is_zero();
            if (!ok) continue;
            rep.has_candidate = true;
            rep.denominator = B;
            rep.numerator = ts_zero(D, proto);
            rep.numerator.c[0] = proto.one_like();
            for (int k = 0; k <= dA; ++k) rep.numerator.c[k] = prod.c[k];
        }
    }

    if (!rep.has_candidate) {
        bool complete_segment = rep.series_polygon.vertices.size() >= 2 &&
                                rep.series_polygon.vertices.back().first < D;
        // a final vertex strictly inside the window completes its segment
        if (!complete_segment && rep.series_polygon.slopes.size() <= 1)
            fail(Err::insufficient_degree, "no complete slope segment at this truncation degree");
        return rep;
    }

    auto pB = inverse_root_power_sums(rep.denominator, D);
    auto pA = inverse_root_power_sums(rep.numerator, D);
    rep.agree_to = 0;
    for (int k = 1; k <= D; ++k) {
        Scaled<PadicInt> want = pB[k] - pA[k];
        if (want == rep.char_sums[k])
            rep.agree_to = k;
        else
            break;
    }
    return rep;
}

} // namespace padl
