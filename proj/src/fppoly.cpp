#include "padl/fppoly.hpp"

namespace padl {
namespace fp {

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

int degree(const Poly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

Poly add(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = addmod(x, y, p);
    }
    return trim(r);
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0;
        u64 y = i < b.size() ? b[i] : 0;
        r[i] = submod(x, y, p);
    }
    return trim(r);
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
    return trim(r);
}

Poly rem(Poly a, const Poly& m, u64 p) {
    a = trim(a);
    Poly mm = trim(m);
    int dm = degree(mm);
    require(dm >= 0, Err::internal, "remainder by zero polynomial");
    u64 lead_inv = inv_unit_mod(mm[dm], p, 1);
    while (degree(a) >= dm) {
        int da = degree(a);
        u64 c = mulmod(a[da], lead_inv, p);
        for (int i = 0; i <= dm; ++i) a[da - dm + i] = submod(a[da - dm + i], mulmod(c, mm[i], p), p);
        a = trim(a);
    }
    return a;
}

Poly gcd(Poly a, Poly b, u64 p) {
    a = trim(a);
    b = trim(b);
    while (degree(b) >= 0) {
        Poly r = rem(a, b, p);
        a = b;
        b = r;
    }
    if (degree(a) >= 0) {
        u64 inv = inv_unit_mod(a[degree(a)], p, 1);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

Poly powmod_poly(Poly a, u64 e, const Poly& m, u64 p) {
    Poly r{1};
    a = rem(a, m, p);
    while (e) {
        if (e & 1) r = rem(mul(r, a, p), m, p);
        a = rem(mul(a, a, p), m, p);
        e >>= 1;
    }
    return r;
}

Poly pow_x_mod(u64 e_base, int e_exp, const Poly& m, u64 p) {
    Poly x{0, 1};
    Poly r = rem(x, m, p);
    for (int i = 0; i < e_exp; ++i) r = powmod_poly(r, e_base, m, p);
    return r;
}

bool is_irreducible(const Poly& f, u64 p) {
    int n = degree(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    // X^(p^n) = X mod f, and X^(p^(n/l)) - X coprime to f for prime l | n.
    Poly x{0, 1};
    Poly xpn = pow_x_mod(p, n, f, p);
    if (trim(sub(xpn, x, p)) != Poly{}) return false;
    int m = n;
    for (int l = 2; l <= m; ++l) {
        if (m % l != 0) continue;
        while (m % l == 0) m /= l;
        Poly xp = pow_x_mod(p, n / l, f, p);
        Poly g = gcd(sub(xp, x, p), f, p);
        if (degree(g) != 0) return false;
    }
    return true;
}

Poly first_irreducible(u64 p, int n) {
    require(n >= 1, Err::bad_input, "extension degree must be positive");
    if (n == 1) return Poly{0, 1}; // T itself: F_p[T]/(T) = F_p
    // Count through monic candidates; the loop is tiny for desk-scale p, n.
    u64 span = pow_u64(p, n);
    for (u64 c = 0; c < span; ++c) {
        Poly f(n + 1, 0);
        u64 t = c;
        for (int i = 0; i < n; ++i) {
            f[i] = t % p;
            t /= p;
        }
        f[n] = 1;
        if (is_irreducible(f, p)) return f;
    }
    fail(Err::internal, "no irreducible polynomial found");
}

} // namespace fp
} // namespace padl
