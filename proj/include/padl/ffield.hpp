#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "padl/fppoly.hpp"
#include "padl/mpoly.hpp"

namespace padl {

// F_{p^m} = F_p[T]/(m(T)), with the same canonical modulus the Zq contexts
// use, so residues and their unramified lifts share coordinates.
class FqContext {
  public:
    static std::shared_ptr<const FqContext> make(u64 p, int deg);

    u64 p() const { return p_; }
    int deg() const { return deg_; }
    u64 order() const { return order_; }
    const fp::Poly& modulus() const { return modulus_; }

  private:
    u64 p_ = 0;
    int deg_ = 0;
    u64 order_ = 0;
    fp::Poly modulus_;
};

using FqCtx = std::shared_ptr<const FqContext>;

class FqElem {
  public:
    FqElem() = default;
    explicit FqElem(FqCtx ctx) : ctx_(std::move(ctx)), c_(ctx_->deg(), 0) {}
    FqElem(FqCtx ctx, std::vector<u64> coords);
    static FqElem from_index(FqCtx ctx, u64 index); // base-p digits
    static FqElem from_scalar(FqCtx ctx, u64 v);

    const FqCtx& ctx() const { return ctx_; }
    const std::vector<u64>& coords() const { return c_; }
    u64 index() const;

    bool is_zero() const;
    FqElem zero_like() const { return FqElem(ctx_); }
    FqElem one_like() const { return from_scalar(ctx_, 1); }

    FqElem pow(u64 e) const;
    FqElem inverse() const;
    FqElem frobenius_p() const { return pow(ctx_->p()); }

    friend FqElem operator+(const FqElem& a, const FqElem& b);
    friend FqElem operator-(const FqElem& a, const FqElem& b);
    friend FqElem operator*(const FqElem& a, const FqElem& b);
    FqElem operator-() const;
    friend bool operator==(const FqElem& a, const FqElem& b) { return a.c_ == b.c_; }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }
    friend bool operator<(const FqElem& a, const FqElem& b) { return a.index() < b.index(); }

    // Trace to the prime field, as a residue in [0, p).
    u64 trace_to_fp() const;

  private:
    FqCtx ctx_;
    std::vector<u64> c_;
};

// An affine variety over F_q, q = p^a: equations and the optional inverted
// polynomial g (points with g != 0), all with integer coefficients.
struct AffineVariety {
    u64 p = 2;
    int a = 1; // q = p^a
    int d = 1; // ambient dimension
    std::vector<MPoly> equations;
    std::optional<MPoly> inverted;

    u64 q() const { return pow_u64(p, a); }
};

struct ClosedPoint {
    int degree = 1;                    // residue extension over F_q
    std::vector<FqElem> rep;           // lex-least point of the orbit, in F_{q^degree}
};

struct EnumBudget {
    u64 max_candidates = 10'000'000;
};

// All F_{q^r}-rational points, in lexicographic order of coordinate indices.
std::vector<std::vector<FqElem>> points_over(const AffineVariety& V, int r,
                                             const EnumBudget& budget = {});

// Galois orbits of degree <= Dmax, each listed once via its lex-least
// representative; degrees ordered ascending, orbits lex within a degree.
std::vector<ClosedPoint> closed_points_up_to(const AffineVariety& V, int Dmax,
                                             const EnumBudget& budget = {});

// Evaluate an integer polynomial at a tuple over F_{q^r}.
FqElem eval_over_fq(const MPoly& f, const std::vector<FqElem>& x);

bool on_variety(const AffineVariety& V, const std::vector<FqElem>& x);

} // namespace padl
