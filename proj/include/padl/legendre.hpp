#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "padl/lseries.hpp"

namespace padl {

// The Legendre family y^2 = x(x-1)(x-lambda) over the lambda-line with
// lambda(1-lambda)H_p(lambda) inverted.  Fibers are computed from point
// counts; the unit root comes both from the counted trace (Hensel) and from
// truncated hypergeometric ratios, and the two routes must agree.

// H_p(lambda) = sum_i C((p-1)/2, i)^2 lambda^i over F_p (p odd).
fp::Poly hasse_poly(u64 p);

struct LegendreFiber {
    u64 p = 3;
    int r = 1; // lambda in F_{p^r}
    FqElem lambda;
    u64 q_lambda = 3;                // p^r
    std::vector<long long> counts;   // #X(F_{q^k}) for k = 1..K
    long long trace_a = 0;           // q + 1 - #X(F_q)
    bool ordinary = true;
    TruncSeries<PadicInt> charpoly{{}}; // 1 - aT + qT^2 over Z/p^N
};

// Exhaustive count via the quadratic character plus the point at infinity;
// the independent double loop over (x, y) is cross-checked inside.
LegendreFiber legendre_count(u64 p, const FqElem& lambda, int N, int K = 2,
                             const EnumBudget& budget = {});

// The valuation-0 root of T^2 - aT + q, Hensel-lifted from T = a mod p.
PadicInt unit_root_from_counts(const LegendreFiber& f, int N);

// Hypergeometric coefficients ((1/2)_i / i!)^2 mod p^N, exact via separate
// unit/p-power bookkeeping (no precision loss), for i < terms.
std::vector<PadicInt> hypergeometric_half_coeffs(u64 p, int N, long terms);

// Unit root by the truncated-ratio chain along the Frobenius orbit of the
// Teichmuller lift, with truncations below p^N and p^(N-1); sign convention
// (-1)^((p-1)/2) per orbit step.  Agrees with unit_root_from_counts mod p^N.
PadicInt unit_root_series_ratio(u64 p, const FqElem& lambda, int N, ZqPool& pool);

struct XiEtaRow {
    int level = 1;      // precision level n
    int num_degree = 0; // degree of the numerator representative
    int den_degree = 0; // degree of the representative's own denominator
    int g_exponent = 0; // minimal e with X g^e a polynomial in the window; -1: beyond the scan cap
    bool within_bound = true;
};

struct XiEtaReport {
    u64 p;
    int N;
    // Ratio rows: the exact rational representative at level n is the pair
    // ([alpha]_{p^n}(l), [alpha]_{p^(n-1)}(l^p)); no g-power denominator is
    // ever needed, and the documented degree ceilings are p^n - 1 for the
    // numerator and p^n - p for the denominator.
    std::vector<XiEtaRow> xi;
    // Logarithmic-derivative rows: minimal g-exponent clearing the
    // denominator of -T'/T at level n; this is where the growth shows up.
    std::vector<XiEtaRow> eta;
};

// Growth table contrasting the unit-root Frobenius ratio, whose level-n
// representatives keep the fixed truncation shape, with the logarithmic
// derivative -alpha'/alpha, whose minimal representatives need ever deeper
// g-denominators as the level grows.
XiEtaReport xi_eta_diagnostic(u64 p, int N);

// L-series source backed by point counts of the family.  Counts are
// memoized per (lambda, field) since the slope decompositions revisit the
// same fibers repeatedly.
struct LegendreSource {
    using Coeff = PadicInt;
    u64 p = 5;
    int N = 6;
    ZqPool* pool = nullptr;
    EnumBudget budget{};
    int workers = 1;
    std::shared_ptr<std::map<std::pair<u64, int>, LegendreFiber>> cache =
        std::make_shared<std::map<std::pair<u64, int>, LegendreFiber>>();

    const LegendreFiber& counted(const FqElem& lambda) const;

    AffineVariety family() const;
    Coeff proto() const { return PadicInt(p, N, 0); }
    int dim_x() const { return 1; }
    int twist() const { return 0; }
    std::vector<ClosedPoint> closed_points(int Dmax) const;
    FiberData<Coeff> fiber_at(const ClosedPoint& x) const;
    FiberFrobenius full_fiber(const ClosedPoint& x) const;
    std::vector<std::vector<FqElem>> points(int r) const;
    Coeff trace_r(const std::vector<FqElem>& pt, int r) const;
};

} // namespace padl
