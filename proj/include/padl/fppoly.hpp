#pragma once

#include <cstdint>
#include <vector>

#include "padl/padic.hpp"

namespace padl {

// Dense univariate polynomials over F_p, coefficients in [0,p), constant term
// first.  Just enough machinery to pick field moduli and run Hensel starts:
// nothing here is performance-critical.
namespace fp {

using Poly = std::vector<u64>;

Poly trim(Poly f);
int degree(const Poly& f); // -1 for the zero polynomial
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly rem(Poly a, const Poly& m, u64 p);
Poly gcd(Poly a, Poly b, u64 p);
Poly pow_x_mod(u64 e_base, int e_exp, const Poly& m, u64 p); // X^(e_base^e_exp) mod m
Poly powmod_poly(Poly a, u64 e, const Poly& m, u64 p);

bool is_irreducible(const Poly& f, u64 p);

// The canonical degree-n modulus used throughout a job: the first monic
// irreducible polynomial of degree n over F_p, ordering candidates by their
// coefficient vector read as a base-p integer (constant term least
// significant).
Poly first_irreducible(u64 p, int n);

} // namespace fp
} // namespace padl
