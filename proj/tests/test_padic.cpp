#include <random>

#include "doctest.h"
#include "padl/eisenstein.hpp"
#include "padl/padic.hpp"
#include "padl/series.hpp"
#include "padl/zq.hpp"

using namespace padl;

TEST_CASE("PadicInt ring axioms on random triples") {
    std::mt19937_64 rng(12345);
    for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
        for (int N : {1, 4, 8}) {
            u64 m = pow_u64(p, N);
            for (int it = 0; it < 1000; ++it) {
                PadicInt a(p, N, rng() % m), b(p, N, rng() % m), c(p, N, rng() % m);
                CHECK((a + b) + c == a + (b + c));
                CHECK(a * (b + c) == a * b + a * c);
                CHECK(a * b == b * a);
                CHECK(a + (-a) == a.zero_like());
                CHECK(a * a.one_like() == a);
            }
        }
    }
}

TEST_CASE("PadicInt precision propagation and exact division") {
    PadicInt a(5, 4, 50);  // 2*5^2
    CHECK(a.valuation() == 2);
    PadicInt b = a.divexact_p_pow(2);
    CHECK(b.prec() == 2);
    CHECK(b.value() == 2);
    CHECK_THROWS_AS(PadicInt(5, 4, 3).divexact_p_pow(1), Error);

    PadicInt x(5, 4, 7), y(5, 2, 7);
    CHECK((x * y).prec() == 2);

    bool atp = false;
    PadicInt z(5, 3, 0);
    CHECK(z.valuation(&atp) == 3);
    CHECK(atp);
}

TEST_CASE("Teichmuller representatives in Z_p") {
    auto ctx = ZqContext::make(5, 3, 1);
    CHECK(teichmuller_rep(ctx, {0}).is_zero());
    CHECK(teichmuller_rep(ctx, {1}) == ZqElement::from_scalar(ctx, 3, 1));

    // omega(2) mod 5^3 is 57, and omega(2)^2 = omega(4) = omega(-1) = -1.
    ZqElement w2 = teichmuller_rep(ctx, {2});
    CHECK(w2.coords()[0] == 57);
    CHECK((w2 * w2).coords()[0] == 124);

    auto ctx7 = ZqContext::make(7, 5, 1);
    ZqElement w6 = teichmuller_rep(ctx7, {6});
    CHECK(w6.coords()[0] == pow_u64(7, 5) - 1);
}

TEST_CASE("Teichmuller fixed points and Frobenius compatibility") {
    for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
        for (int deg = 1; deg <= 3; ++deg) {
            auto ctx = ZqContext::make(p, 4, deg);
            u64 q = pow_u64(p, deg);
            for (u64 idx = 0; idx < q; ++idx) {
                std::vector<u64> coords(deg);
                u64 t = idx;
                for (int i = 0; i < deg; ++i) {
                    coords[i] = t % p;
                    t /= p;
                }
                ZqElement w = teichmuller_rep(ctx, coords);
                CHECK(w.pow(q) == w);
                if (idx != 0) CHECK(w.pow(q - 1) == w.one_like());
                // sigma(omega(r)) = omega(r^p)
                std::vector<u64> rp_coords;
                {
                    ZqElement r1(ctx, 1, coords);
                    rp_coords = r1.pow(p).coords();
                }
                CHECK(w.frobenius() == teichmuller_rep(ctx, rp_coords));
                // sigma(x) = x^p mod p
                CHECK(w.frobenius().reduced(1) == w.pow(p).reduced(1));
            }
        }
    }
}

TEST_CASE("Frobenius on Z_4 = Z_2[T]/(T^2+T+1) sends T to T+1 mod 2") {
    auto ctx = ZqContext::make(2, 4, 2);
    CHECK(ctx->modulus() == std::vector<u64>{1, 1, 1}); // first irreducible: 1+T+T^2
    ZqElement t(ctx, 4, {0, 1});
    ZqElement ft = t.frobenius().reduced(1);
    CHECK(ft == ZqElement(ctx, 1, {1, 1}));
}

TEST_CASE("Frobenius is an involution on Z_25 and fixes Z_5") {
    auto ctx = ZqContext::make(5, 4, 2);
    std::mt19937_64 rng(77);
    u64 m = pow_u64(5, 4);
    for (int it = 0; it < 50; ++it) {
        ZqElement x(ctx, 4, {rng() % m, rng() % m});
        CHECK(x.frobenius().frobenius() == x);
        // norm-like product is sigma-invariant
        ZqElement nrm = x * x.frobenius();
        CHECK(nrm.frobenius() == nrm);
    }
    ZqElement s = ZqElement::from_scalar(ctx, 4, 123);
    CHECK(s.frobenius() == s);
}

TEST_CASE("Zq ring axioms and inverses") {
    std::mt19937_64 rng(99);
    for (u64 p : {2ull, 3ull, 5ull}) {
      for (int N : {1, 4, 8}) {
        auto ctx = ZqContext::make(p, N, 3);
        u64 m = pow_u64(p, N);
        for (int it = 0; it < 350; ++it) {
            ZqElement a(ctx, N, {rng() % m, rng() % m, rng() % m});
            ZqElement b(ctx, N, {rng() % m, rng() % m, rng() % m});
            ZqElement c(ctx, N, {rng() % m, rng() % m, rng() % m});
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (a.is_unit()) CHECK(a * a.unit_inverse() == a.one_like());
        }
      }
    }
}

TEST_CASE("Eisenstein pi^(p-1) = -p exactly, valuations additive") {
    std::mt19937_64 rng(4242);
    for (u64 p : {2ull, 3ull, 5ull, 7ull}) {
        for (int N : {1, 4, 8}) {
            PadicInt proto(p, N, 0);
            EisPadic pi = EisPadic::pi(proto);
            EisPadic lhs = pi.pow(p - 1);
            CHECK(lhs == pi.from_int_like(-(long long)p));
            CHECK(pi.pi_valuation() == 1);

            u64 m = pow_u64(p, N);
            for (int it = 0; it < 350; ++it) {
                std::vector<PadicInt> ac, bc;
                for (u64 i = 0; i + 1 < p; ++i) {
                    ac.emplace_back(p, N, rng() % m);
                    bc.emplace_back(p, N, rng() % m);
                }
                EisPadic a{std::move(ac)}, b{std::move(bc)};
                bool atp_a, atp_b, atp_ab;
                long va = a.pi_valuation(&atp_a), vb = b.pi_valuation(&atp_b);
                long vab = (a * b).pi_valuation(&atp_ab);
                if (!atp_a && !atp_b && !atp_ab) CHECK(vab == va + vb);
                if (a.is_unit()) CHECK(a * a.unit_inverse() == a.one_like());
            }
        }
    }
}

TEST_CASE("series exp: exp(0) = 1 and exp(pi t) at p = 3") {
    PadicInt proto(3, 6, 0);
    EisPadic pi = EisPadic::pi(proto);
    auto z = ts_zero(4, pi);
    auto e0 = ts_exp(z);
    CHECK(ts_equal(e0, ts_one(4, pi)));

    auto s = ts_zero(2, pi);
    s.c[1] = pi;
    auto e = ts_exp(s);
    CHECK(e.c[0] == pi.one_like());
    CHECK(e.c[1] == pi);
    CHECK(e.c[2] == (pi * pi).divexact_int(2)); // 1/2 is a 3-adic unit
}

TEST_CASE("series log/exp round trip") {
    std::mt19937_64 rng(555);
    for (u64 p : {2ull, 3ull, 5ull}) {
        int N = 8, D = 6;
        u64 m = pow_u64(p, N);
        PadicInt proto(p, N, 0);
        auto s = ts_zero(D, proto);
        // zero constant term, coefficients divisible by p so that exp/log
        // divisions stay well inside precision
        for (int k = 1; k <= D; ++k) s.c[k] = PadicInt(p, N, (rng() % m) * p % m);
        auto e = ts_exp(s);
        auto l = ts_log(e);
        for (int k = 0; k <= D; ++k) CHECK(l.c[k] == s.c[k]);
    }
}

TEST_CASE("series inverse") {
    PadicInt proto(5, 6, 0);
    auto a = ts_one(5, proto);
    a.c[1] = PadicInt(5, 6, 3);
    auto b = ts_inverse(a);
    auto ab = ts_mul(a, b);
    CHECK(ts_equal(ab, ts_one(5, proto)));
}
