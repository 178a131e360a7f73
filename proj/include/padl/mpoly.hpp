#pragma once

#include <string>
#include <vector>

#include "padl/padic.hpp"

namespace padl {

// Sparse multivariate polynomial with integer coefficients held as residues
// (the caller says modulo what).  This is the carrier for variety equations,
// Frobenius-lift images and F-module matrix entries.
struct MPoly {
    struct Term {
        std::vector<u32> e; // exponents, one per variable
        u64 c;
    };
    int nvars = 0;
    std::vector<Term> terms; // sorted by exponent vector, no zero coeffs

    bool is_zero() const { return terms.empty(); }
    int total_degree() const;
    int degree_in(int var) const;

    static MPoly zero(int nvars) { return MPoly{nvars, {}}; }
    static MPoly constant(int nvars, u64 c, u64 mod);
    static MPoly variable(int nvars, int i);
    static MPoly monomial(int nvars, const std::vector<u32>& e, u64 c, u64 mod);

    std::string str(const std::vector<std::string>& vars) const;
};

MPoly mp_normalize(MPoly a, u64 mod);
MPoly mp_add(const MPoly& a, const MPoly& b, u64 mod);
MPoly mp_sub(const MPoly& a, const MPoly& b, u64 mod);
MPoly mp_mul(const MPoly& a, const MPoly& b, u64 mod);
MPoly mp_scale(const MPoly& a, u64 c, u64 mod);
MPoly mp_pow(const MPoly& a, u32 k, u64 mod);
MPoly mp_reduce(const MPoly& a, u64 mod); // reduce coefficients mod a smaller modulus
bool mp_equal(const MPoly& a, const MPoly& b);

// x_i -> x_i^k for every variable (the q-power substitution).
MPoly mp_power_vars(const MPoly& a, u32 k);

// Parse an integer polynomial expression over the named variables:
// +, -, *, ^, parentheses, decimal integers.  Coefficients land mod `mod`.
MPoly mp_parse(const std::string& text, const std::vector<std::string>& vars, u64 mod);

// Evaluate over any ring R with value semantics; `embed` maps a residue
// lift to R.  Powers per variable are cached.
template <class R, class Embed>
R mp_eval(const MPoly& a, const std::vector<R>& x, const R& proto, Embed embed) {
    require((int)x.size() == a.nvars, Err::internal, "evaluation point has wrong arity");
    std::vector<std::vector<R>> pows(a.nvars);
    for (int v = 0; v < a.nvars; ++v) pows[v].push_back(proto.one_like());
    R acc = proto.zero_like();
    for (const auto& t : a.terms) {
        R m = embed(t.c);
        for (int v = 0; v < a.nvars; ++v) {
            while (pows[v].size() <= t.e[v]) pows[v].push_back(pows[v].back() * x[v]);
            if (t.e[v]) m = m * pows[v][t.e[v]];
        }
        acc = acc + m;
    }
    return acc;
}

} // namespace padl
