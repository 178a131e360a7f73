// Acceptance battery: every criterion is pinned here at its stated tolerance
// and prints exactly one PASS/FAIL line.  Any failure exits nonzero.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "padl/job.hpp"

using namespace padl;

namespace {

int g_failures = 0;

void criterion(int number, const char* what, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string msg;
    try {
        body();
    } catch (const std::exception& e) {
        ok = false;
        msg = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("%s  criterion %2d  [%6lld ms]  %s%s%s\n", ok ? "PASS" : "FAIL", number,
                (long long)ms, what, msg.empty() ? "" : " -- ", msg.c_str());
    if (!ok) ++g_failures;
}

void expect(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
}

AffineVariety line(u64 p, int a = 1) {
    AffineVariety V;
    V.p = p;
    V.a = a;
    V.d = 1;
    return V;
}

AffineVariety gm(u64 p) {
    AffineVariety V = line(p);
    V.inverted = mp_parse("t", {"t"}, p);
    return V;
}

MPoly random_poly(std::mt19937_64& rng, int deg, u64 mod) {
    MPoly r = MPoly::zero(1);
    for (int k = 0; k <= deg; ++k)
        r = mp_add(r, MPoly::monomial(1, {(u32)k}, rng() % mod, mod), mod);
    return r;
}

FModule random_module(std::mt19937_64& rng, const AffineVariety& V, int rank, int N) {
    u64 mod = pow_u64(V.p, N);
    std::vector<std::vector<MPoly>> mat(rank, std::vector<MPoly>(rank, MPoly::zero(1)));
    for (auto& row : mat)
        for (auto& e : row) e = random_poly(rng, 2, mod);
    return FModule::from_polys(V, N, FrobeniusLift::standard(1, V.p), mat);
}

// occurring normalized slopes across all fibers of degree <= D
template <class Src>
std::vector<Rational> occurring_slopes(const Src& src, int D) {
    std::vector<Rational> out;
    for (const auto& x : src.closed_points(D)) {
        FiberFrobenius fib = src.full_fiber(x);
        for (auto& [s, f] : fiber_slope_factors(fib)) {
            bool seen = false;
            for (auto& t : out) seen = seen || t == s;
            if (!seen) out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

int main() {
    // 1 -------------------------------------------------------------------
    criterion(1, "Teichmuller representatives and lift squares (N = 6)", [] {
        int N = 6;
        for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
            for (int deg = 1; deg <= 3; ++deg) {
                auto ctx = ZqContext::make(p, N, deg);
                u64 q = pow_u64(p, deg);
                for (u64 idx = 0; idx < q; ++idx) {
                    std::vector<u64> coords(deg);
                    u64 t = idx;
                    for (int i = 0; i < deg; ++i) {
                        coords[i] = t % p;
                        t /= p;
                    }
                    ZqElement w = teichmuller_rep(ctx, coords);
                    expect(w.pow(q) == w, "fixed point failed");
                    ZqElement r1(ctx, 1, coords);
                    expect(w.frobenius() == teichmuller_rep(ctx, r1.pow(p).coords()),
                           "sigma compatibility failed");
                }
            }
        }
        // twenty random nonstandard lifts F(t) = t^q + p * (random poly)
        std::mt19937_64 rng(20260810);
        for (int it = 0; it < 20; ++it) {
            u64 p = std::vector<u64>{2, 3, 5, 7}[it % 4];
            u64 mod = pow_u64(p, N);
            AffineVariety V = line(p);
            ZqPool pool(p, N);
            MPoly pert = mp_scale(random_poly(rng, 3, mod), p, mod);
            FrobeniusLift F;
            F.d = 1;
            F.q = p;
            F.images = {mp_add(FrobeniusLift::standard(1, p).images[0], pert, mod)};
            F.validate(p, mod);
            for (const auto& x : closed_points_up_to(V, 2)) {
                TeichPoint tp = teich_lift(V, x, F, pool);
                // the defining square, re-checked explicitly
                ZqElement img = mp_eval(F.images[0], tp.coords, tp.coords[0].zero_like(),
                                        [&](u64 c) { return tp.coords[0].from_int_like((long long)c); });
                expect(img == sigma_q(tp.coords[0], 1), "square does not commute");
                // random second start converges to the same point
                std::vector<ZqElement> start{tp.coords[0] +
                                             ZqElement::from_scalar(pool.get(x.degree), N, p * (rng() % 97))};
                expect(teich_lift_from(V, x, F, pool, start).coords[0] == tp.coords[0],
                       "uniqueness failed");
            }
        }
    });

    // 2 -------------------------------------------------------------------
    criterion(2, "Legendre exact counts and traces (double-loop oracle)", [] {
        auto f5 = FqContext::make(5, 1);
        LegendreFiber a = legendre_count(5, FqElem::from_scalar(f5, 2), 4);
        expect(a.counts[0] == 8 && a.trace_a == -2, "lambda = 2 over F_5");
        LegendreFiber b = legendre_count(5, FqElem::from_scalar(f5, 3), 4);
        expect(b.counts[0] == 4 && b.trace_a == 2, "lambda = 3 over F_5");
        auto f7 = FqContext::make(7, 1);
        LegendreFiber c = legendre_count(7, FqElem::from_scalar(f7, 6), 4);
        expect(c.counts[0] == 8 && c.trace_a == 0 && !c.ordinary, "lambda = 6 over F_7");
        fp::Poly h7 = hasse_poly(7);
        u64 hv = 0;
        for (int i = (int)h7.size() - 1; i >= 0; --i) hv = addmod(mulmod(hv, 6, 7), h7[i], 7);
        expect(hv == 0, "H_7(6) != 0");
    });

    // 3 -------------------------------------------------------------------
    criterion(3, "unit roots: truncated-ratio route = counted route mod p^3", [] {
        int N = 3;
        for (u64 p : {5ull, 7ull, 13ull}) {
            ZqPool pool(p, N);
            auto ctx = FqContext::make(p, 1);
            for (u64 lam = 2; lam < p; ++lam) {
                FqElem l = FqElem::from_scalar(ctx, lam);
                LegendreFiber f = legendre_count(p, l, N);
                if (!f.ordinary) continue;
                expect(unit_root_from_counts(f, N) == unit_root_series_ratio(p, l, N, pool),
                       "mismatch at p=" + std::to_string(p) + " lambda=" + std::to_string(lam));
            }
        }
        ZqPool pool(5, N);
        auto f25 = FqContext::make(5, 2);
        for (u64 idx = 0; idx < 25; ++idx) {
            FqElem l = FqElem::from_index(f25, idx);
            if (l.is_zero() || l == FqElem::from_scalar(f25, 1)) continue;
            LegendreFiber f = legendre_count(5, l, N);
            if (!f.ordinary) continue;
            expect(unit_root_from_counts(f, N) == unit_root_series_ratio(5, l, N, pool),
                   "mismatch over F_25 at index " + std::to_string(idx));
        }
    });

    // 4 -------------------------------------------------------------------
    criterion(4, "Euler product = exponential sum for 10 random modules (mod t^6)", [] {
        std::mt19937_64 rng(410);
        int N = 8, D = 5, count = 0;
        while (count < 10) {
            u64 p = (count % 2) ? 3 : 2;
            AffineVariety V = (count % 4 < 2) ? line(p) : gm(p);
            ZqPool pool(p, N);
            FModule M = random_module(rng, V, 1 + count % 2, N);
            PolyModuleSource src{&M, &pool};
            expect(ts_equal(l_euler(src, D), l_expsum(src, D)),
                   "module " + std::to_string(count) + " disagrees");
            ++count;
        }
    });

    // 5 -------------------------------------------------------------------
    criterion(5, "slope identities: full product, power transform, Sym/Lambda", [] {
        // L = prod_alpha L_alpha and the r = 2 variant, on the Legendre family
        {
            u64 p = 5;
            int N = 6, D = 4;
            ZqPool pool(p, N);
            LegendreSource src{p, N, &pool};
            auto L = l_euler(src, D);
            auto slopes = occurring_slopes(src, D);
            auto prod = ts_one(D, L.c[0]);
            for (const auto& al : slopes) prod = ts_mul(prod, l_alpha(src, al, D));
            expect(ts_equal(L, prod), "full product over slopes (Legendre)");

            auto L2 = l_power(src, 2, nullptr, D);
            auto prod2 = ts_one(D, L.c[0]);
            for (const auto& al : slopes) prod2 = ts_mul(prod2, l_power(src, 2, &al, D));
            expect(ts_equal(L2, prod2), "power-2 product over slopes (Legendre)");
        }
        // the same for a random rank-2 module, plus the Sym/Lambda identity
        // (N generous: the tensor-square fibers carry slopes up to 4 per
        // degree, and the slope splits must stay certified)
        {
            std::mt19937_64 rng(55);
            u64 p = 3;
            int N = 30, D = 3;
            ZqPool pool(p, N);
            AffineVariety V = line(p);
            FModule M = random_module(rng, V, 2, N);
            PolyModuleSource src{&M, &pool};
            auto slopes = occurring_slopes(src, D);
            auto L = l_euler(src, D);
            auto prod = ts_one(D, L.c[0]);
            for (const auto& al : slopes) prod = ts_mul(prod, l_alpha(src, al, D));
            expect(ts_equal(L, prod), "full product over slopes (rank 2)");

            // L^(2) = L(M (x) M) * L(Lambda^2 M)^(-2), coefficientwise
            FModule MM = tensor(M, M);
            FModule E2 = ext_power(M, 2);
            PolyModuleSource smm{&MM, &pool}, se2{&E2, &pool};
            auto rhs = ts_mul(l_euler(smm, D),
                              ts_mul(ts_inverse(l_euler(se2, D)), ts_inverse(l_euler(se2, D))));
            expect(ts_equal(l_power(src, 2, nullptr, D), rhs), "Sym/Lambda decomposition");

            // slope-alpha refinement: the r-th power part at alpha matches the
            // tensor side at slope 2 alpha
            for (const auto& al : slopes) {
                Rational twoal = Rational::of(2 * al.n, al.d);
                auto rhs_al = ts_mul(l_alpha(smm, twoal, D),
                                     ts_mul(ts_inverse(l_alpha(se2, twoal, D)),
                                            ts_inverse(l_alpha(se2, twoal, D))));
                expect(ts_equal(l_power(src, 2, &al, D), rhs_al),
                       "slope-refined decomposition at alpha = " + al.str());
            }
        }
    });

    // 6 -------------------------------------------------------------------
    criterion(6, "character layer: additivity, torsion, orthogonality, orbit products", [] {
        for (u64 p : {2ull, 3ull}) {
            int N = 5;
            ZqPool pool(p, N);
            auto E = SplittingFunction::make(p, 1, N);
            for (int r = 1; r <= 2; ++r) {
                auto ctx = FqContext::make(p, r);
                EisPadic one = E.e1().one_like();
                for (u64 i = 0; i < ctx->order(); ++i) {
                    FqElem a = FqElem::from_index(ctx, i);
                    expect(E.psi(a).pow(p) == one, "psi^p != 1");
                    for (u64 j = 0; j < ctx->order(); ++j) {
                        FqElem b = FqElem::from_index(ctx, j);
                        expect(E.psi(a + b) == E.psi(a) * E.psi(b), "psi not additive");
                    }
                }
            }
            // orthogonality with one and two equations
            u64 mod = pow_u64(p, N);
            std::vector<std::vector<MPoly>> systems = {
                {mp_parse("x", {"x"}, mod)},
                {mp_parse("x", {"x"}, mod), mp_parse("x^2 + x", {"x"}, mod)}};
            for (auto& fb : systems) {
                auto chi = make_character(p, 1, N, 1, fb);
                for (int r = 1; r <= 2; ++r) {
                    auto ctx = FqContext::make(p, r);
                    for (u64 i = 0; i < ctx->order(); ++i) {
                        FqElem x = FqElem::from_index(ctx, i);
                        bool onX = true;
                        for (auto& f : fb) onX = onX && eval_over_fq(f, {x}).is_zero();
                        EisPadic sum = orthogonality_sum(chi, {x}, r);
                        u64 qrs = pow_u64(pow_u64(p, (int)fb.size()), r);
                        if (onX)
                            expect(sum == sum.from_int_like((long long)qrs), "orthogonality != q^rs");
                        else
                            expect(sum.is_zero(), "orthogonality != 0");
                    }
                }
            }
            // orbit products over every point of the plane
            auto chi = make_character(p, 1, N, 1, {mp_parse("x", {"x"}, mod)});
            AffineVariety plane;
            plane.p = p;
            plane.d = 2;
            for (int r = 1; r <= 2; ++r)
                for (const auto& xy : points_over(plane, r))
                    expect(orbit_product_matches_psi(chi, xy, r, pool), "orbit product != psi_r");
        }
    });

    // 7 -------------------------------------------------------------------
    criterion(7, "affine-space reduction with the 1/q^s rescaling (mod t^4)", [] {
        u64 p = 2;
        int N = 8, D = 3;
        ZqPool pool(p, N);
        u64 mod = pow_u64(p, N);
        // X = {x = 0} in A^1
        auto chi1 = make_character(p, 1, N, 1, {mp_parse("x", {"x"}, mod)});
        expect(affine_reduction_check(chi1, MPoly::constant(1, 1, mod), 0, D, pool).ok,
               "X = {x=0}, trivial");
        expect(affine_reduction_check(chi1, mp_parse("1 + 2*x", {"x"}, mod), 1, D, pool).ok,
               "X = {x=0}, twisted rank 1");
        // X = {x + y = 0} in A^2
        auto chi2 = make_character(p, 1, N, 2, {mp_parse("x + y", {"x", "y"}, mod)});
        expect(affine_reduction_check(chi2, MPoly::constant(2, 1, mod), 0, D, pool).ok,
               "X = {x+y=0}, trivial");
        expect(affine_reduction_check(chi2, mp_parse("1 + 2*x*y", {"x", "y"}, mod), 1, D, pool).ok,
               "X = {x+y=0}, twisted rank 1");
    });

    // 8 -------------------------------------------------------------------
    criterion(8, "Monsky trace formula with Fredholm stability at B and B+16", [] {
        int D = 4;
        for (u64 p : {2ull, 3ull}) {
            int N = 6;
            ZqPool pool(p, N);
            FModule M = FModule::trivial(line(p), N);
            auto rep = trace_formula_check(M, D, default_basis_bound(p, D, N), pool);
            expect(rep.stable && rep.match, "trivial module over F_" + std::to_string(p));
        }
        {
            u64 p = 3;
            int N = 5;
            ZqPool pool(p, N);
            auto E = SplittingFunction::make(p, 1, N);
            auto rep = trace_formula_check_dwork(E, MPoly::variable(1, 0), p, 1, N, D,
                                                 default_basis_bound(p, D, N), pool);
            expect(rep.stable && rep.match, "Dwork module along f = x over F_3");
        }
        {
            u64 p = 3;
            int N = 6;
            ZqPool pool(p, N);
            u64 m = pow_u64(p, N);
            std::vector<std::vector<MPoly>> mat(2, std::vector<MPoly>(2, MPoly::zero(1)));
            mat[0][0] = MPoly::constant(1, 1, m);
            mat[1][1] = mp_parse("3*t", {"t"}, m);
            FModule M = FModule::from_polys(gm(p), N, FrobeniusLift::standard(1, p), mat);
            auto rep = trace_formula_check(M, D, default_basis_bound(p, D, N), pool);
            expect(rep.stable && rep.match, "diag(1, pt) on G_m over F_3");
        }
    });

    // 9 -------------------------------------------------------------------
    criterion(9, "integrality of L to t^8 for 10 random integral modules (N = 4)", [] {
        std::mt19937_64 rng(99);
        int N = 4, D = 8, count = 0;
        while (count < 10) {
            u64 p = (count % 2) ? 3 : 2;
            AffineVariety V = (count % 2) ? gm(p) : line(p);
            ZqPool pool(p, N);
            FModule M = random_module(rng, V, 1 + count % 2, N);
            PolyModuleSource src{&M, &pool};
            auto rep = integrality_check(l_euler(src, D), src.dim_x(), src.twist());
            expect(rep.applicable && rep.integral, "violation in module " + std::to_string(count));
            ++count;
        }
    });

    // 10 ------------------------------------------------------------------
    criterion(10, "i = 1 Dwork-operator blocks are divisible by p, exactly", [] {
        for (u64 p : {2ull, 3ull}) {
            FModule M = FModule::trivial(line(p), 6);
            auto G = operator_input_from_module(M);
            expect(block_entries_divisible_by_p(dwork_block(G, 1, 24)), "trivial module block");
        }
        {
            std::mt19937_64 rng(7);
            FModule M = random_module(rng, gm(3), 2, 6);
            auto G = operator_input_from_module(M);
            expect(block_entries_divisible_by_p(dwork_block(G, 1, 16)), "random G_m block");
        }
        {
            auto S = dwork_line_series(3, 1, 5, MPoly::variable(1, 0), 3 * 26);
            OperatorInput<EisPadic> G;
            G.q = 3;
            G.rank = 1;
            G.zero = EisPadic::from_base(PadicInt(3, 5, 0));
            G.entries.push_back({0, S.c});
            expect(block_entries_divisible_by_p(dwork_block(G, 1, 24)), "Dwork module block");
        }
    });

    // 11 ------------------------------------------------------------------
    criterion(11, "xi/eta growth table at p = 5, N = 4 (structural)", [] {
        auto rep = xi_eta_diagnostic(5, 4);
        expect(rep.xi.size() == 4 && rep.eta.size() == 4, "table malformed");
        for (const auto& row : rep.xi) {
            expect(row.g_exponent == 0, "xi row needs a g-power");
            expect(row.within_bound, "xi row exceeds the documented degree ceiling");
        }
        expect(rep.eta[0].g_exponent >= 1, "eta row at level 1 should need g");
        for (const auto& row : rep.eta)
            expect(row.g_exponent != 0, "eta row claims a polynomial representative");
    });

    std::printf("%s\n", g_failures ? "ACCEPTANCE: FAIL" : "ACCEPTANCE: PASS");
    return g_failures ? 1 : 0;
}
