#include "padl/teich.hpp"

namespace padl {

ZqElement sigma_q(const ZqElement& x, int a) { return x.frobenius_pow(a); }

namespace {

std::vector<ZqElement> apply_lift(const FrobeniusLift& F, const std::vector<ZqElement>& y) {
    std::vector<ZqElement> r;
    r.reserve(y.size());
    const ZqElement& proto = y[0];
    for (const auto& img : F.images)
        r.push_back(mp_eval(img, y, proto, [&](u64 c) { return proto.from_int_like((long long)c); }));
    return r;
}

} // namespace

TeichPoint teich_lift_from(const AffineVariety& V, const ClosedPoint& x, const FrobeniusLift& F,
                           ZqPool& pool, std::vector<ZqElement> y) {
    require(on_variety(V, x.rep), Err::not_on_variety, "closed point violates the variety equations");
    int N = pool.N();
    int r = x.degree;
    int inv_steps = V.a * (r - 1); // sigma_q^{-1} = sigma_q^{r-1} on Z_{q^r}
    // reduction of the start must match the point
    for (int i = 0; i < V.d; ++i) {
        ZqElement red = y[i].reduced(1);
        ZqElement want(y[i].ctx(), 1, x.rep[i].coords());
        require(red == want, Err::not_on_variety, "starting lift does not reduce to the point");
    }

    int prev_agree = 0;
    for (int iter = 0; iter <= 4 * N + 2; ++iter) {
        std::vector<ZqElement> fy = apply_lift(F, y);
        std::vector<ZqElement> next;
        next.reserve(fy.size());
        for (auto& c : fy) next.push_back(c.frobenius_pow(inv_steps));
        bool same = true;
        int agree = N;
        for (int i = 0; i < V.d; ++i) {
            if (next[i] != y[i]) same = false;
            bool atp = false;
            int v = (next[i] - y[i]).valuation(&atp);
            if (!atp) agree = std::min(agree, v);
        }
        if (same) {
            // the defining square commutes by construction; check it anyway
            std::vector<ZqElement> check = apply_lift(F, next);
            for (int i = 0; i < V.d; ++i)
                require(check[i] == sigma_q(next[i], V.a), Err::internal,
                        "Teichmuller square failed to commute");
            return TeichPoint{x, std::move(next)};
        }
        require(agree > prev_agree, Err::non_contraction,
                "Teichmuller iteration stopped improving (invalid Frobenius lift?)");
        prev_agree = agree;
        y = std::move(next);
    }
    fail(Err::non_contraction, "Teichmuller iteration exceeded its step budget");
}

TeichPoint teich_lift(const AffineVariety& V, const ClosedPoint& x, const FrobeniusLift& F,
                      ZqPool& pool) {
    ZqCtx ctx = pool.get(V.a * x.degree);
    std::vector<ZqElement> y;
    y.reserve(x.rep.size());
    for (const auto& c : x.rep) y.emplace_back(ctx, pool.N(), c.coords());
    return teich_lift_from(V, x, F, pool, std::move(y));
}

} // namespace padl
