#include "padl/monsky.hpp"

namespace padl {

OperatorInput<PadicInt> operator_input_from_module(const FModule& M) {
    require(M.base.d == 1, Err::unsupported_base,
            "operator construction supports one-variable bases only");
    bool laurent = false;
    if (M.base.inverted) {
        require(mp_equal(*M.base.inverted, MPoly::variable(1, 0)), Err::unsupported_base,
                "only the coordinate function may be inverted for the operator construction");
        laurent = true;
    }
    require(mp_equal(M.lift.images[0], FrobeniusLift::standard(1, M.base.q()).images[0]),
            Err::unsupported_base, "operator construction needs the standard Frobenius lift");
    require(M.twist >= 0, Err::unsupported_base,
            "operator construction folds in nonnegative twists only");

    OperatorInput<PadicInt> G;
    G.q = M.base.q();
    G.laurent = laurent;
    G.rank = M.rank;
    G.zero = PadicInt(M.base.p, M.N, 0);
    u64 scale = 1;
    for (int i = 0; i < M.twist; ++i) scale *= M.base.p;
    for (int i = 0; i < M.rank; ++i)
        for (int j = 0; j < M.rank; ++j) {
            const LocEntry& e = M.entries.at(i, j);
            LaurentSeries<PadicInt> s;
            s.lo = -(long)e.gpow;
            int deg = e.num.is_zero() ? 0 : e.num.degree_in(0);
            s.c.assign(size_t(deg + 1), G.zero);
            for (const auto& t : e.num.terms)
                s.c[t.e[0]] = PadicInt(M.base.p, M.N, mulmod(t.c, scale % M.mod(), M.mod()));
            G.entries.push_back(std::move(s));
        }
    return G;
}

TraceFormulaReport<PadicInt> trace_formula_check(const FModule& M, int D, int B, ZqPool& pool,
                                                 const EnumBudget& budget, int deltaB) {
    PolyModuleSource src{&M, &pool, budget};
    auto euler = l_euler(src, D);
    OperatorInput<PadicInt> G = operator_input_from_module(M);
    return combine_trace_formula(euler, G, D, B, deltaB);
}

TruncSeries<EisPadic> dwork_line_series(u64 p, int a, int N, const MPoly& f, int Dt) {
    u64 q = pow_u64(p, a);
    PadicInt proto(p, N + 2, 0);
    auto acc = ts_one(Dt, EisPadic::from_base(proto));
    for (const auto& t : f.terms) {
        int m = (int)t.e[0];
        require(m >= 1 || t.c == 0, Err::unsupported_base,
                "constant terms in the exponent are not supported");
        if (t.c == 0) continue;
        acc = ts_mul(acc, exp_pi_monomial_series(p, N + 2, t.c, m, false, Dt));
        acc = ts_mul(acc, exp_pi_monomial_series(p, N + 2, t.c, m * (int)q, true, Dt));
    }
    return acc;
}

FiberData<EisPadic> DworkLineSource::fiber_at(const ClosedPoint& x) const {
    EisPadic value = trace_r(x.rep, x.degree);
    auto cp = ts_zero(1, proto());
    cp.c[0] = proto().one_like();
    cp.c[1] = -value;
    return {cp, x.degree, 0};
}

EisPadic DworkLineSource::trace_r(const std::vector<FqElem>& pt, int r) const {
    ZqCtx ctx = pool->get(a * r);
    ZqElement xhat = teichmuller_rep(ctx, pt[0].coords()).reduced(N);
    ZqElement A0 = mp_eval(f, std::vector<ZqElement>{xhat}, xhat.zero_like(),
                           [&](u64 c) { return xhat.from_int_like((long long)c); });
    Eisenstein<ZqElement> v = orbit_exponential_value(*E, A0, a, r);
    std::vector<PadicInt> c;
    for (const auto& z : v.coeffs()) {
        require(z.is_scalar(), Err::internal, "orbit value did not land in Z_p[pi]");
        c.push_back(z.as_padic());
    }
    return EisPadic{c};
}

TraceFormulaReport<EisPadic> trace_formula_check_dwork(const SplittingFunction& E, const MPoly& f,
                                                       u64 p, int a, int N, int D, int B,
                                                       ZqPool& pool, const EnumBudget& budget,
                                                       int deltaB) {
    DworkLineSource src{&E, f, p, a, N, &pool, budget};
    auto euler = l_euler(src, D);
    OperatorInput<EisPadic> G;
    G.q = pow_u64(p, a);
    G.laurent = false;
    G.rank = 1;
    G.zero = EisPadic::from_base(PadicInt(p, N, 0));
    int Dt = (int)G.q * (B + deltaB + 2);
    LaurentSeries<EisPadic> s;
    s.lo = 0;
    s.c = dwork_line_series(p, a, N, f, Dt).c;
    G.entries.push_back(std::move(s));
    return combine_trace_formula(euler, G, D, B, deltaB);
}

} // namespace padl
