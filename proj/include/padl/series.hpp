#pragma once

#include <vector>

#include "padl/error.hpp"

namespace padl {

// Truncated power series over an exact coefficient ring R.  The truncation
// order is fixed by the coefficient vector: a series with D+1 coefficients is
// known mod t^(D+1).  Per-coefficient precision rides on R itself.
template <class R>
struct TruncSeries {
    std::vector<R> c;

    int trunc() const { return (int)c.size() - 1; }
    const R& operator[](int k) const { return c[k]; }
    R& operator[](int k) { return c[k]; }

    // Ring-concept surface, so a truncated series ring can itself serve as a
    // coefficient ring (matrix entries, determinants).
    TruncSeries zero_like() const;
    TruncSeries one_like() const;
    TruncSeries from_int_like(long long v) const;
    bool is_zero() const {
        for (const auto& x : c)
            if (!x.is_zero()) return false;
        return true;
    }
    TruncSeries unit_inverse() const;
    TruncSeries divexact_int(long long k) const {
        TruncSeries r = *this;
        for (auto& x : r.c) x = x.divexact_int(k);
        return r;
    }
};

template <class R>
TruncSeries<R> ts_zero(int D, const R& proto) {
    return {std::vector<R>(size_t(D + 1), proto.zero_like())};
}

template <class R>
TruncSeries<R> ts_one(int D, const R& proto) {
    auto s = ts_zero(D, proto);
    s.c[0] = proto.one_like();
    return s;
}

template <class R>
void ts_check_same(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    require(a.c.size() == b.c.size(), Err::internal, "series truncation mismatch");
}

template <class R>
TruncSeries<R> ts_add(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    ts_check_same(a, b);
    TruncSeries<R> r = a;
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

template <class R>
TruncSeries<R> ts_sub(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    ts_check_same(a, b);
    TruncSeries<R> r = a;
    for (size_t k = 0; k < r.c.size(); ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

template <class R>
TruncSeries<R> ts_neg(const TruncSeries<R>& a) {
    TruncSeries<R> r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

template <class R>
TruncSeries<R> ts_mul(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    ts_check_same(a, b);
    TruncSeries<R> r = ts_zero(a.trunc(), a.c[0]);
    int D = a.trunc();
    for (int i = 0; i <= D; ++i)
        for (int j = 0; i + j <= D; ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    return r;
}

template <class R>
TruncSeries<R> ts_scalar_mul(const R& s, const TruncSeries<R>& a) {
    TruncSeries<R> r = a;
    for (auto& x : r.c) x = s * x;
    return r;
}

// Inverse of a series with unit constant term.
template <class R>
TruncSeries<R> ts_inverse(const TruncSeries<R>& a) {
    int D = a.trunc();
    TruncSeries<R> r = ts_zero(D, a.c[0]);
    R inv0 = a.c[0].unit_inverse();
    r.c[0] = inv0;
    for (int k = 1; k <= D; ++k) {
        R s = a.c[0].zero_like();
        for (int j = 1; j <= k; ++j) s = s + a.c[j] * r.c[k - j];
        r.c[k] = -(inv0 * s);
    }
    return r;
}

// exp of a series with zero constant term, via the differential recurrence
// k e_k = sum_{j<=k} j s_j e_{k-j}.  Each coefficient pays exactly the
// division by k it needs, and the precision tags record the loss.
template <class R>
TruncSeries<R> ts_exp(const TruncSeries<R>& s) {
    require(s.c[0].is_zero(), Err::internal, "exp of series with nonzero constant term");
    int D = s.trunc();
    TruncSeries<R> e = ts_zero(D, s.c[0]);
    e.c[0] = s.c[0].one_like();
    for (int k = 1; k <= D; ++k) {
        R acc = s.c[0].zero_like();
        for (int j = 1; j <= k; ++j) acc = acc + s.c[j].from_int_like(j) * s.c[j] * e.c[k - j];
        e.c[k] = acc.divexact_int(k);
    }
    return e;
}

// log of a series with constant term 1: l' = u'/u, integrated term by term.
template <class R>
TruncSeries<R> ts_log(const TruncSeries<R>& u) {
    int D = u.trunc();
    TruncSeries<R> du = ts_zero(D, u.c[0]); // u' shifted: du[k] = (k+1) u_{k+1}
    for (int k = 0; k < D; ++k) du.c[k] = u.c[k + 1].from_int_like(k + 1) * u.c[k + 1];
    TruncSeries<R> w = ts_mul(du, ts_inverse(u));
    TruncSeries<R> l = ts_zero(D, u.c[0]);
    for (int k = 1; k <= D; ++k) l.c[k] = w.c[k - 1].divexact_int(k);
    return l;
}

// Substitute t -> s*t.
template <class R>
TruncSeries<R> ts_scale_var(const TruncSeries<R>& a, const R& s) {
    TruncSeries<R> r = a;
    R pw = s.one_like();
    for (int k = 1; k <= a.trunc(); ++k) {
        pw = pw * s;
        r.c[k] = a.c[k] * pw;
    }
    return r;
}

// Substitute t -> t^m (truncating).
template <class R>
TruncSeries<R> ts_stretch(const TruncSeries<R>& a, int m, int D) {
    TruncSeries<R> r = ts_zero(D, a.c[0]);
    for (int k = 0; k <= a.trunc() && (long)k * m <= D; ++k) r.c[k * m] = a.c[k];
    return r;
}

template <class R>
bool ts_equal(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    ts_check_same(a, b);
    for (size_t k = 0; k < a.c.size(); ++k)
        if (a.c[k] != b.c[k]) return false;
    return true;
}

template <class R>
TruncSeries<R> TruncSeries<R>::zero_like() const {
    return ts_zero(trunc(), c[0]);
}
template <class R>
TruncSeries<R> TruncSeries<R>::one_like() const {
    return ts_one(trunc(), c[0]);
}
template <class R>
TruncSeries<R> TruncSeries<R>::from_int_like(long long v) const {
    auto s = ts_zero(trunc(), c[0]);
    s.c[0] = c[0].from_int_like(v);
    return s;
}
template <class R>
TruncSeries<R> TruncSeries<R>::unit_inverse() const {
    return ts_inverse(*this);
}

template <class R>
TruncSeries<R> operator+(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    return ts_add(a, b);
}
template <class R>
TruncSeries<R> operator-(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    return ts_sub(a, b);
}
template <class R>
TruncSeries<R> operator*(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    return ts_mul(a, b);
}
template <class R>
TruncSeries<R> operator-(const TruncSeries<R>& a) {
    return ts_neg(a);
}
template <class R>
bool operator==(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    return ts_equal(a, b);
}
template <class R>
bool operator!=(const TruncSeries<R>& a, const TruncSeries<R>& b) {
    return !ts_equal(a, b);
}

} // namespace padl
