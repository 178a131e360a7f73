#pragma once

#include "padl/dwork.hpp"

namespace padl {

// Dwork operator blocks on the affine line and the punctured line, for the
// standard Frobenius lift t -> t^q.  The i = 0 block acts on functions, the
// i = 1 block on 1-forms; entries extract every q-th coefficient after
// multiplying by the module's matrix expanded as a (Laurent) series in t.

template <class R>
struct LaurentSeries {
    long lo = 0;
    std::vector<R> c; // coefficient of t^(lo + i)

    R coeff(long k, const R& zero) const {
        long i = k - lo;
        if (i < 0 || i >= (long)c.size()) return zero;
        return c[i];
    }
};

template <class R>
struct OperatorInput {
    u64 q = 2;
    bool laurent = false; // false: A^1 basis t^j, j >= 0; true: G_m, j in [-B, B]
    int rank = 1;
    std::vector<LaurentSeries<R>> entries; // rank x rank, row-major
    R zero;

    const LaurentSeries<R>& at(int i, int j) const { return entries[size_t(i) * rank + j]; }
};

// Matrix of the i-th block truncated to the monomial window of size B.
// Rows and columns are (basis index, module index) pairs.
template <class R>
Mat<R> dwork_block(const OperatorInput<R>& G, int i_block, int B) {
    require(i_block == 0 || i_block == 1, Err::unsupported_base, "blocks exist for i in {0,1} only");
    long lo = G.laurent ? -(long)B : 0;
    long hi = B;
    int n = (int)(hi - lo + 1) * G.rank;
    require(n <= 4000, Err::basis_overflow, "operator truncation too large");
    Mat<R> A = Mat<R>::filled(n, n, G.zero);
    long q = (long)G.q;
    for (long j = lo; j <= hi; ++j)
        for (long k = lo; k <= hi; ++k) {
            // i = 0: coefficient q(j+1)-(k+1) of G; i = 1: q * coefficient qj-k
            long idx = i_block == 0 ? q * (j + 1) - (k + 1) : q * j - k;
            for (int v = 0; v < G.rank; ++v)
                for (int u = 0; u < G.rank; ++u) {
                    R val = G.at(u, v).coeff(idx, G.zero);
                    if (i_block == 1) val = val * G.zero.from_int_like((long long)G.q);
                    A.at((int)((j - lo) * G.rank + v), (int)((k - lo) * G.rank + u)) = val;
                }
        }
    return A;
}

// Every entry of the i = 1 block must be divisible by p (it carries a factor
// q); returns false if any provably unit entry appears.
template <class R>
bool block_entries_divisible_by_p(const Mat<R>& A) {
    for (const auto& x : A.a) {
        bool atp = false;
        if (x.valuation(&atp) < 1 && !atp) return false;
    }
    return true;
}

template <class R>
struct FredholmResult {
    TruncSeries<R> det{{}};
    bool stable = false;
    int B = 0;
};

// det(1 - t Phi_i) mod t^(D+1) with the mandatory a-posteriori stability
// check: the same determinant at basis bound B + deltaB must agree at the
// tracked precision.
template <class R>
FredholmResult<R> fredholm_det(const OperatorInput<R>& G, int i_block, int B, int D,
                               int deltaB = 16) {
    FredholmResult<R> res;
    res.B = B;
    res.det = char_series(dwork_block(G, i_block, B), D);
    auto wider = char_series(dwork_block(G, i_block, B + deltaB), D);
    res.stable = ts_equal(res.det, wider);
    return res;
}

// Heuristic basis bound, always followed by the stability check.
inline int default_basis_bound(u64 q, int D, int N) {
    return (int)(q * ((u64)D + (u64)N * q / (q - 1))) + 8;
}

template <class R>
struct TraceFormulaReport {
    bool stable = true;
    bool match = true;
    int agree_to = -1;
    TruncSeries<Scaled<R>> euler_side{{}};
    TruncSeries<Scaled<R>> trace_side{{}};
    bool i1_divisible = true;
};

// Shared tail: combine the two Fredholm determinants as
// det(1 - t Phi_1)^(-1) det(1 - t Phi_0) and compare with the Euler product.
template <class R>
TraceFormulaReport<R> combine_trace_formula(const TruncSeries<Scaled<R>>& euler,
                                            const OperatorInput<R>& G, int D, int B, int deltaB) {
    TraceFormulaReport<R> rep;
    rep.euler_side = euler;
    auto f0 = fredholm_det(G, 0, B, D, deltaB);
    auto f1 = fredholm_det(G, 1, B, D, deltaB);
    rep.stable = f0.stable && f1.stable;
    rep.i1_divisible = block_entries_divisible_by_p(dwork_block(G, 1, B));
    Scaled<R> proto{G.zero, 0};
    auto wrap = [&](const TruncSeries<R>& s) {
        auto out = ts_zero(D, proto);
        for (int k = 0; k <= D; ++k) out.c[k] = Scaled<R>::wrap(s.c[k]);
        return out;
    };
    rep.trace_side = ts_mul(ts_inverse(wrap(f1.det)), wrap(f0.det));
    rep.agree_to = D;
    for (int k = 0; k <= D; ++k)
        if (!(rep.trace_side.c[k] == euler.c[k])) {
            rep.match = false;
            rep.agree_to = k - 1;
            break;
        }
    return rep;
}

// Operator input from a polynomial F-module on A^1 or G_m (standard lift,
// twist >= 0 folded into the entries).
OperatorInput<PadicInt> operator_input_from_module(const FModule& M);

TraceFormulaReport<PadicInt> trace_formula_check(const FModule& M, int D, int B, ZqPool& pool,
                                                 const EnumBudget& budget = {}, int deltaB = 16);

// The pullback of the Dwork module along a polynomial map f: A^1 -> A^1:
// rank 1 with series exp(pi f(t)) exp(-pi f(t^q)).
struct DworkLineSource {
    using Coeff = EisPadic;
    const SplittingFunction* E = nullptr;
    MPoly f; // one variable
    u64 p = 2;
    int a = 1;
    int N = 6;
    ZqPool* pool = nullptr;
    EnumBudget budget{};
    int workers = 1;

    Coeff proto() const { return EisPadic::from_base(PadicInt(p, N, 0)); }
    int dim_x() const { return 1; }
    int twist() const { return 0; }
    AffineVariety ambient() const {
        AffineVariety V;
        V.p = p;
        V.a = a;
        V.d = 1;
        return V;
    }
    std::vector<ClosedPoint> closed_points(int Dmax) const {
        return closed_points_up_to(ambient(), Dmax, budget);
    }
    FiberData<Coeff> fiber_at(const ClosedPoint& x) const;
    std::vector<std::vector<FqElem>> points(int r) const {
        return points_over(ambient(), r, budget);
    }
    Coeff trace_r(const std::vector<FqElem>& pt, int r) const;
};

// exp(pi (f(t) - f(t^q))) as an exact truncated series.
TruncSeries<EisPadic> dwork_line_series(u64 p, int a, int N, const MPoly& f, int Dt);

TraceFormulaReport<EisPadic> trace_formula_check_dwork(const SplittingFunction& E, const MPoly& f,
                                                       u64 p, int a, int N, int D, int B,
                                                       ZqPool& pool, const EnumBudget& budget = {},
                                                       int deltaB = 16);

} // namespace padl
