#pragma once

#include "padl/eisenstein.hpp"
#include "padl/lseries.hpp"

namespace padl {

// The splitting series E(t) = exp(pi (t - t^q)) over Z_p[pi], truncated at a
// degree chosen from its convergence radius so that E(1) carries the full
// working precision.  E(1) is a primitive p-th root of unity normalized by
// E(1) = 1 + pi mod pi^2; psi_r is E(1)^(lifted trace).
class SplittingFunction {
  public:
    // N = target precision in p-adic digits; the series is built at a raised
    // working precision to absorb the exp divisions.
    static SplittingFunction make(u64 p, int a, int N, int Dt = 0);

    u64 p() const { return p_; }
    u64 q() const { return q_; }
    int Dt() const { return (int)series_.trunc(); }
    const TruncSeries<EisPadic>& series() const { return series_; }
    const EisPadic& e1() const { return e1_; }

    // psi_r on any F_{q^r}: E(1)^(Tr to F_p, lifted to [0,p)).
    EisPadic psi(const FqElem& x) const;

    // E evaluated at an integral element of Zq[pi].
    Eisenstein<ZqElement> eval(const ZqElement& z) const;

  private:
    u64 p_ = 2, q_ = 2;
    TruncSeries<EisPadic> series_{{}};
    EisPadic e1_;
};

// exp of an element with pi-valuation >= p (arguments pi * (p-divisible)),
// where the series converges coefficient-by-coefficient.
template <class B>
Eisenstein<B> exp_pdiv(const Eisenstein<B>& x) {
    bool atp = false;
    long v = x.pi_valuation(&atp);
    require(atp || v >= (long)x.p(), Err::internal, "exp argument converges too slowly");
    Eisenstein<B> acc = x.one_like();
    Eisenstein<B> term = x.one_like();
    long target = x.pi_precision();
    for (long k = 1; k <= 64 * (long)x.p(); ++k) {
        term = (term * x).divexact_int(k);
        acc = acc + term;
        bool t_atp = false;
        long tv = term.pi_valuation(&t_atp);
        if (t_atp || tv >= target) break;
    }
    return acc;
}

// exp(+-pi c t^step) truncated at Dt: coefficient of t^(step j) is
// (+-pi c)^j / j!, exact at precision N via unit/p-power bookkeeping.
TruncSeries<EisPadic> exp_pi_monomial_series(u64 p, int N, u64 cf, int step, bool neg, int Dt);

// Orbit product of exp(pi(t - t^sigma)) pulled back through any integral
// A with sigma^r(A) = A: prod_j E(A_j) times the p-divisible correction.
Eisenstein<ZqElement> orbit_exponential_value(const SplittingFunction& E, const ZqElement& A0,
                                              int a, int r);

// A rank-1 character module on A^(d+s): the pullback of the Dwork module
// along f(x, y) = sum y_i fbar_i(x), with the standard lift on every
// variable.  Orbit values are computed analytically from E.
struct CharacterData {
    u64 p = 2;
    int a = 1; // q = p^a
    int N = 6;
    int d = 1;                // x-variables
    std::vector<MPoly> fbars; // s polynomials in the d x-variables
    SplittingFunction E;

    int s() const { return (int)fbars.size(); }
    u64 q() const { return pow_u64(p, a); }
};

CharacterData make_character(u64 p, int a, int N, int d, std::vector<MPoly> fbars);

// Product of the character Frobenius along the full degree-r orbit of an
// F_{q^r}-point of A^(d+s); lands in Z_q[pi].
Eisenstein<ZqElement> character_orbit_value(const CharacterData& chi,
                                            const std::vector<FqElem>& xy, int r, ZqPool& pool);

// Does the orbit product equal psi_r(f(x, y))?
bool orbit_product_matches_psi(const CharacterData& chi, const std::vector<FqElem>& xy, int r,
                               ZqPool& pool);

// sum over y in F_{q^r}^s of psi_r(sum y_i fbar_i(x)): q^{rs} on the zero
// locus of the fbar_i, 0 off it.
EisPadic orthogonality_sum(const CharacterData& chi, const std::vector<FqElem>& x, int r,
                           const EnumBudget& budget = {});

// L-series source for pr*(M0) tensor L_{psi,f} on A^(d+s), M0 a rank-1
// ambient module with polynomial entry C0 (in the x-variables only).
struct CharacterTwistSource {
    using Coeff = EisPadic;
    const CharacterData* chi = nullptr;
    MPoly C0;
    int twist_value = 0;
    ZqPool* pool = nullptr;
    EnumBudget budget{};
    int workers = 1;

    AffineVariety ambient() const {
        AffineVariety V;
        V.p = chi->p;
        V.a = chi->a;
        V.d = chi->d + chi->s();
        return V;
    }
    Coeff proto() const {
        return EisPadic::from_base(PadicInt(chi->p, chi->N, 0));
    }
    int dim_x() const { return chi->d + chi->s(); }
    int twist() const { return twist_value; }
    std::vector<ClosedPoint> closed_points(int Dmax) const {
        return closed_points_up_to(ambient(), Dmax, budget);
    }
    FiberData<Coeff> fiber_at(const ClosedPoint& x) const;
    std::vector<std::vector<FqElem>> points(int r) const {
        return points_over(ambient(), r, budget);
    }
    Coeff trace_r(const std::vector<FqElem>& pt, int r) const;
};

struct AffineReductionReport {
    bool ok = true;
    int agree_to = -1;   // t-degree through which both sides agree
    int min_prec = 0;    // provable digits of the scaled side at the last degree
    std::string note;
};

// Check L(X, M, t) = L(A^(d+s), pr*(M0) (x) L_psi,f, t/q^s) mod t^(D+1),
// where X is cut out by the fbar_i inside A^d and M0 lifts M's entry.
AffineReductionReport affine_reduction_check(const CharacterData& chi, const MPoly& C0, int twist,
                                             int D, ZqPool& pool, const EnumBudget& budget = {});

} // namespace padl
