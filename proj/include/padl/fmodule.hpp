#pragma once

#include <memory>

#include "padl/matrix.hpp"
#include "padl/teich.hpp"

namespace padl {

// Matrix entry of an F-module over the localized ring: num / g^gpow, with
// coefficients mod p^N.  Models the ring concept, so the generic matrix
// functors (tensor, Sym, Lambda) apply directly.
struct LocEntry {
    MPoly num;
    u32 gpow = 0;
    std::shared_ptr<const MPoly> g; // shared localization polynomial (may be null)
    u64 mod = 0;

    LocEntry zero_like() const { return {MPoly::zero(num.nvars), 0, g, mod}; }
    LocEntry one_like() const { return {MPoly::constant(num.nvars, 1, mod), 0, g, mod}; }
    LocEntry from_int_like(long long v) const {
        u64 r = (u64)(v % (long long)mod + (v < 0 ? (long long)mod : 0));
        return {MPoly::constant(num.nvars, r, mod), 0, g, mod};
    }
    bool is_zero() const { return num.is_zero(); }
    int prec() const { return 0; } // entries carry no tags; precision lives on values

    friend LocEntry operator*(const LocEntry& a, const LocEntry& b) {
        return {mp_mul(a.num, b.num, a.mod), a.gpow + b.gpow, a.g, a.mod};
    }
    friend LocEntry operator+(const LocEntry& a, const LocEntry& b) {
        u32 e = std::max(a.gpow, b.gpow);
        MPoly an = a.num, bn = b.num;
        if (a.g) {
            for (u32 i = a.gpow; i < e; ++i) an = mp_mul(an, *a.g, a.mod);
            for (u32 i = b.gpow; i < e; ++i) bn = mp_mul(bn, *a.g, a.mod);
        }
        return {mp_add(an, bn, a.mod), e, a.g, a.mod};
    }
    friend LocEntry operator-(const LocEntry& a, const LocEntry& b) { return a + (-b); }
    LocEntry operator-() const { return {mp_scale(num, mod - 1, mod), gpow, g, mod}; }
};

// A free F-module of finite rank over the (localized) coordinate ring mod
// p^N: a Frobenius lift and the matrix of phi in a fixed basis, phi(e_j) =
// sum_i entries(i,j) e_i, plus a formal p^twist carried separately.
struct FModule {
    AffineVariety base;
    int N = 6;
    FrobeniusLift lift;
    int rank = 1;
    Mat<LocEntry> entries;
    int twist = 0;

    u64 mod() const { return pow_u64(base.p, N); }

    static FModule trivial(const AffineVariety& V, int N);
    static FModule from_polys(const AffineVariety& V, int N, const FrobeniusLift& F,
                              const std::vector<std::vector<MPoly>>& mat,
                              const std::vector<std::vector<u32>>* gpows = nullptr);
    void validate() const;
};

// The fiber at a closed point: the deg(x)-fold Frobenius orbit product at
// the Teichmuller lift, and its characteristic series det(1 - T Phi), whose
// coefficients are checked to be sigma-invariant and stored over Z_p.
struct FiberFrobenius {
    ClosedPoint point;
    int r = 1;             // degree of the point
    int a = 1;             // q = p^a
    Mat<ZqElement> matrix;
    TruncSeries<PadicInt> charpoly; // untwisted; eigenvalue scale p^(twist*r) is separate
    int twist_per_deg = 0;          // = twist * r
};

FiberFrobenius fiber(const FModule& M, const ClosedPoint& x, ZqPool& pool);

// Orbit product matrix for an arbitrary F_{q^r}-point (used by the
// exponential-sum construction, where points are not grouped into orbits).
Mat<ZqElement> orbit_frobenius_matrix(const FModule& M, const std::vector<FqElem>& pt, int r,
                                      ZqPool& pool);

// Functor constructions.  Tensor requires matching base and lift.
FModule tensor(const FModule& A, const FModule& B);
FModule sym_power(const FModule& M, int k);
FModule ext_power(const FModule& M, int k);
FModule twist(const FModule& M, int alpha);

// Size guard for iterated functor ranks.
inline constexpr int kMaxFunctorRank = 64;

} // namespace padl
