#pragma once

#include <algorithm>
#include <vector>

#include "padl/series.hpp"

namespace padl {

// Dense matrix over an exact coefficient ring, value semantics throughout.
template <class R>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<R> a;

    static Mat filled(int r, int c, const R& v) { return Mat{r, c, std::vector<R>(size_t(r) * c, v)}; }
    static Mat identity(int n, const R& proto) {
        Mat m = filled(n, n, proto.zero_like());
        for (int i = 0; i < n; ++i) m.at(i, i) = proto.one_like();
        return m;
    }

    R& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const R& at(int i, int j) const { return a[size_t(i) * cols + j]; }
};

template <class R>
Mat<R> mat_mul(const Mat<R>& A, const Mat<R>& B) {
    require(A.cols == B.rows, Err::internal, "matrix dimension mismatch");
    Mat<R> C = Mat<R>::filled(A.rows, B.cols, A.a[0].zero_like());
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k)
            for (int j = 0; j < B.cols; ++j) C.at(i, j) = C.at(i, j) + A.at(i, k) * B.at(k, j);
    return C;
}

template <class R>
R mat_trace(const Mat<R>& A) {
    R t = A.a[0].zero_like();
    for (int i = 0; i < A.rows; ++i) t = t + A.at(i, i);
    return t;
}

// det(1 - t A) mod t^(D+1).  Gaussian elimination over R[t]/(t^(D+1)): every
// pivot is 1 + t(...), a unit there, and stays so through the updates, so no
// division in R is ever needed.
template <class R>
TruncSeries<R> char_series(const Mat<R>& A, int D) {
    require(A.rows == A.cols, Err::internal, "char_series needs a square matrix");
    int n = A.rows;
    const R proto = n ? A.a[0].zero_like() : R();
    using S = TruncSeries<R>;
    if (n == 0) return ts_one(D, proto);
    std::vector<S> W(size_t(n) * n, ts_zero(D, proto));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            S& s = W[size_t(i) * n + j];
            if (i == j) s.c[0] = proto.one_like();
            if (D >= 1) s.c[1] = -A.at(i, j);
        }
    int full = 0;
    for (const auto& x : A.a) full = std::max(full, x.prec());
    auto series_min_prec = [](const S& s) {
        int m = s.c[0].prec();
        for (const auto& x : s.c) m = std::min(m, x.prec());
        return m;
    };
    S det = ts_one(D, proto);
    for (int k = 0; k < n; ++k) {
        S& pivot = W[size_t(k) * n + k];
        det = ts_mul(det, pivot);
        S pinv = ts_inverse(pivot);
        for (int i = k + 1; i < n; ++i) {
            S f = ts_mul(W[size_t(i) * n + k], pinv);
            // A multiplier that vanishes at full working precision can be
            // skipped without weakening any precision tag.
            if (f.is_zero() && series_min_prec(f) >= full) continue;
            for (int j = k; j < n; ++j)
                W[size_t(i) * n + j] = ts_sub(W[size_t(i) * n + j], ts_mul(f, W[size_t(k) * n + j]));
        }
    }
    return det;
}

inline std::vector<std::vector<int>> subsets_lex(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < m; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<std::vector<int>> multisets_lex(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < m; ++i) {
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

template <class R>
Mat<R> mat_kron(const Mat<R>& A, const Mat<R>& B) {
    Mat<R> C = Mat<R>::filled(A.rows * B.rows, A.cols * B.cols, A.a[0].zero_like());
    for (int i1 = 0; i1 < A.rows; ++i1)
        for (int j1 = 0; j1 < A.cols; ++j1)
            for (int i2 = 0; i2 < B.rows; ++i2)
                for (int j2 = 0; j2 < B.cols; ++j2)
                    C.at(i1 * B.rows + i2, j1 * B.cols + j2) = A.at(i1, j1) * B.at(i2, j2);
    return C;
}

// Leibniz determinant for small matrices over any commutative ring; used for
// compound matrices and Sylvester resultants (n stays <= 8 at call sites).
template <class R>
R leibniz_det(const Mat<R>& A) {
    require(A.rows == A.cols, Err::internal, "determinant of non-square matrix");
    int n = A.rows;
    R proto = A.a[0].zero_like();
    if (n == 0) return proto.one_like();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    R acc = proto.zero_like();
    // iterate permutations with parity tracking
    std::vector<int> c(n, 0);
    int sign = 1;
    auto add_term = [&]() {
        R t = sign > 0 ? proto.one_like() : -proto.one_like();
        for (int i = 0; i < n; ++i) t = t * A.at(i, perm[i]);
        acc = acc + t;
    };
    add_term();
    int i = 0;
    while (i < n) {
        if (c[i] < i) {
            std::swap(perm[i % 2 == 0 ? 0 : c[i]], perm[i]);
            sign = -sign;
            add_term();
            ++c[i];
            i = 0;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    return acc;
}

// k-th compound matrix: entries are minors on k-subsets of rows/columns.
template <class R>
Mat<R> mat_ext_power(const Mat<R>& A, int k) {
    auto idx = subsets_lex(A.rows, k);
    int n = (int)idx.size();
    Mat<R> C = Mat<R>::filled(n, n, A.a[0].zero_like());
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            Mat<R> sub = Mat<R>::filled(k, k, A.a[0].zero_like());
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) sub.at(i, j) = A.at(idx[s][i], idx[t][j]);
            C.at(s, t) = leibniz_det(sub);
        }
    return C;
}

// Induced action on the k-th symmetric power in the monomial basis.
template <class R>
Mat<R> mat_sym_power(const Mat<R>& A, int k) {
    auto idx = multisets_lex(A.rows, k);
    int n = (int)idx.size();
    Mat<R> C = Mat<R>::filled(n, n, A.a[0].zero_like());
    auto find_multiset = [&](std::vector<int> m) {
        std::sort(m.begin(), m.end());
        for (int s = 0; s < n; ++s)
            if (idx[s] == m) return s;
        fail(Err::internal, "multiset lookup failed");
    };
    for (int t = 0; t < n; ++t) {
        // expand prod_{j in T} (sum_i A[i][j] e_i)
        std::vector<int> assign(k, 0);
        auto rec = [&](auto&& self, int pos, R coeff, std::vector<int> chosen) -> void {
            if (pos == k) {
                int s = find_multiset(chosen);
                C.at(s, t) = C.at(s, t) + coeff;
                return;
            }
            for (int i = 0; i < A.rows; ++i) {
                chosen.push_back(i);
                self(self, pos + 1, coeff * A.at(i, idx[t][pos]), chosen);
                chosen.pop_back();
            }
        };
        rec(rec, 0, A.a[0].one_like(), {});
    }
    return C;
}

} // namespace padl
