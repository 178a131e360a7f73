#pragma once

#include "padl/ffield.hpp"
#include "padl/zq.hpp"

namespace padl {

// A lift of the q-power Frobenius to the (localized) polynomial ring over
// Z/p^N: coordinate images F(t_i) congruent to t_i^q mod p.  On the locus
// where g is inverted, F extends by F(1/g) = 1/F(g).
struct FrobeniusLift {
    int d = 1;
    u64 q = 2; // p^a
    std::vector<MPoly> images;

    static FrobeniusLift standard(int d, u64 q) {
        FrobeniusLift F;
        F.d = d;
        F.q = q;
        for (int i = 0; i < d; ++i) {
            MPoly m = MPoly::variable(d, i);
            for (auto& t : m.terms) t.e[i] = (u32)q;
            F.images.push_back(m);
        }
        return F;
    }

    // F(t_i) - t_i^q must vanish mod p.
    void validate(u64 p, u64 mod) const {
        require((int)images.size() == d, Err::bad_input, "Frobenius lift needs one image per variable");
        for (int i = 0; i < d; ++i) {
            MPoly diff = mp_sub(images[i], standard(d, q).images[i], mod);
            for (const auto& t : diff.terms)
                require(t.c % p == 0, Err::bad_input, "Frobenius lift image is not t^q mod p");
        }
    }
};

struct TeichPoint {
    ClosedPoint source;
    std::vector<ZqElement> coords; // in Z_{q^r} at full precision
};

// The unique fixed point of y -> sigma^(-1)(F(y)) over the closed point x.
// Starts from the coordinatewise integer lift of the representative.
TeichPoint teich_lift(const AffineVariety& V, const ClosedPoint& x, const FrobeniusLift& F,
                      ZqPool& pool);

// Same, but from a caller-chosen starting lift (used to exercise uniqueness).
TeichPoint teich_lift_from(const AffineVariety& V, const ClosedPoint& x, const FrobeniusLift& F,
                           ZqPool& pool, std::vector<ZqElement> start);

// sigma_q = (p-power Frobenius)^a on a Z_{q^r} element.
ZqElement sigma_q(const ZqElement& x, int a);

} // namespace padl
