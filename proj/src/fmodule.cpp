#include "padl/fmodule.hpp"

namespace padl {

FModule FModule::trivial(const AffineVariety& V, int N) {
    FModule M;
    M.base = V;
    M.N = N;
    M.lift = FrobeniusLift::standard(V.d, V.q());
    M.rank = 1;
    std::shared_ptr<const MPoly> g;
    if (V.inverted) g = std::make_shared<const MPoly>(*V.inverted);
    LocEntry proto{MPoly::zero(V.d), 0, g, M.mod()};
    M.entries = Mat<LocEntry>::filled(1, 1, proto.one_like());
    return M;
}

FModule FModule::from_polys(const AffineVariety& V, int N, const FrobeniusLift& F,
                            const std::vector<std::vector<MPoly>>& mat,
                            const std::vector<std::vector<u32>>* gpows) {
    FModule M;
    M.base = V;
    M.N = N;
    M.lift = F;
    M.rank = (int)mat.size();
    std::shared_ptr<const MPoly> g;
    if (V.inverted) g = std::make_shared<const MPoly>(*V.inverted);
    LocEntry proto{MPoly::zero(V.d), 0, g, M.mod()};
    M.entries = Mat<LocEntry>::filled(M.rank, M.rank, proto.zero_like());
    for (int i = 0; i < M.rank; ++i) {
        require((int)mat[i].size() == M.rank, Err::bad_input, "F-module matrix is not square");
        for (int j = 0; j < M.rank; ++j) {
            u32 e = gpows ? (*gpows)[i][j] : 0;
            require(e == 0 || g != nullptr, Err::bad_input,
                    "denominator power given but the variety has no inverted polynomial");
            M.entries.at(i, j) = LocEntry{mp_reduce(mat[i][j], M.mod()), e, g, M.mod()};
        }
    }
    M.validate();
    return M;
}

void FModule::validate() const {
    require(rank >= 1, Err::bad_input, "F-module rank must be >= 1");
    lift.validate(base.p, mod());
    require((int)lift.images.size() == base.d, Err::bad_input, "Frobenius lift arity mismatch");
}

namespace {

ZqElement eval_entry(const LocEntry& ent, const std::vector<ZqElement>& pt,
                     const ZqElement& ginv) {
    const ZqElement& proto = pt[0];
    ZqElement v = mp_eval(ent.num, pt, proto, [&](u64 c) { return proto.from_int_like((long long)c); });
    for (u32 i = 0; i < ent.gpow; ++i) v = v * ginv;
    return v;
}

} // namespace

Mat<ZqElement> orbit_frobenius_matrix(const FModule& M, const std::vector<FqElem>& pt, int r,
                                      ZqPool& pool) {
    ClosedPoint x{r, pt};
    TeichPoint tau = teich_lift(M.base, x, M.lift, pool);
    const ZqElement proto = tau.coords[0].zero_like();

    Mat<ZqElement> acc = Mat<ZqElement>::identity(M.rank, proto);
    std::vector<ZqElement> cur = tau.coords;
    for (int j = 0; j < r; ++j) {
        ZqElement ginv = proto.one_like();
        if (M.base.inverted) {
            ZqElement gv = mp_eval(*M.base.inverted, cur, proto,
                                   [&](u64 c) { return proto.from_int_like((long long)c); });
            require(gv.is_unit(), Err::not_on_variety, "inverted polynomial vanishes at the lift");
            ginv = gv.unit_inverse();
        }
        Mat<ZqElement> Cj = Mat<ZqElement>::filled(M.rank, M.rank, proto);
        for (int i = 0; i < M.rank; ++i)
            for (int k = 0; k < M.rank; ++k) Cj.at(i, k) = eval_entry(M.entries.at(i, k), cur, ginv);
        acc = mat_mul(Cj, acc); // C(tau^(q^j)) applied after the earlier factors
        for (auto& c : cur) c = sigma_q(c, M.base.a);
    }
    return acc;
}

FiberFrobenius fiber(const FModule& M, const ClosedPoint& x, ZqPool& pool) {
    FiberFrobenius f;
    f.point = x;
    f.r = x.degree;
    f.a = M.base.a;
    f.matrix = orbit_frobenius_matrix(M, x.rep, x.degree, pool);
    TruncSeries<ZqElement> cp = char_series(f.matrix, M.rank);
    f.charpoly = ts_zero(M.rank, PadicInt(M.base.p, pool.N(), 0));
    for (int k = 0; k <= M.rank; ++k) {
        require(cp.c[k].is_scalar(), Err::internal,
                "fiber charpoly coefficient is not sigma-invariant");
        f.charpoly.c[k] = cp.c[k].as_padic();
    }
    f.twist_per_deg = M.twist * x.degree;
    return f;
}

FModule tensor(const FModule& A, const FModule& B) {
    require(A.base.p == B.base.p && A.base.a == B.base.a && A.base.d == B.base.d && A.N == B.N,
            Err::bad_input, "tensor factors live over different bases");
    require(mp_equal(A.lift.images[0], B.lift.images[0]), Err::bad_input,
            "tensor factors carry different Frobenius lifts");
    require(A.rank * B.rank <= kMaxFunctorRank, Err::rank_overflow, "tensor rank too large");
    FModule M = A;
    M.rank = A.rank * B.rank;
    M.entries = mat_kron(A.entries, B.entries);
    M.twist = A.twist + B.twist;
    return M;
}

FModule sym_power(const FModule& M0, int k) {
    require(k >= 0, Err::bad_input, "negative symmetric power");
    FModule M = M0;
    if (k == 0) {
        M.rank = 1;
        M.entries = Mat<LocEntry>::filled(1, 1, M0.entries.a[0].one_like());
    } else {
        M.entries = mat_sym_power(M0.entries, k);
        M.rank = M.entries.rows;
    }
    require(M.rank <= kMaxFunctorRank, Err::rank_overflow, "symmetric power rank too large");
    M.twist = M0.twist * k;
    return M;
}

FModule ext_power(const FModule& M0, int k) {
    require(k >= 1 && k <= M0.rank, Err::bad_input, "exterior power out of range");
    FModule M = M0;
    M.entries = mat_ext_power(M0.entries, k);
    M.rank = M.entries.rows;
    M.twist = M0.twist * k;
    return M;
}

FModule twist(const FModule& M0, int alpha) {
    FModule M = M0;
    M.twist += alpha;
    return M;
}

} // namespace padl
