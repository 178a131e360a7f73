#include "padl/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace padl {

int MPoly::total_degree() const {
    int d = 0;
    for (const auto& t : terms) {
        int s = 0;
        for (u32 e : t.e) s += (int)e;
        d = std::max(d, s);
    }
    return d;
}

int MPoly::degree_in(int var) const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, (int)t.e[var]);
    return d;
}

MPoly MPoly::constant(int nvars, u64 c, u64 mod) {
    MPoly r{nvars, {}};
    if (c % mod) r.terms.push_back({std::vector<u32>(nvars, 0), c % mod});
    return r;
}

MPoly MPoly::variable(int nvars, int i) {
    MPoly r{nvars, {}};
    std::vector<u32> e(nvars, 0);
    e[i] = 1;
    r.terms.push_back({e, 1});
    return r;
}

MPoly MPoly::monomial(int nvars, const std::vector<u32>& e, u64 c, u64 mod) {
    MPoly r{nvars, {}};
    if (c % mod) r.terms.push_back({e, c % mod});
    return r;
}

MPoly mp_normalize(MPoly a, u64 mod) {
    std::map<std::vector<u32>, u64> acc;
    for (auto& t : a.terms) {
        u64& slot = acc[t.e];
        slot = addmod(slot, t.c % mod, mod);
    }
    MPoly r{a.nvars, {}};
    for (auto& [e, c] : acc)
        if (c) r.terms.push_back({e, c});
    return r;
}

MPoly mp_add(const MPoly& a, const MPoly& b, u64 mod) {
    MPoly r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return mp_normalize(std::move(r), mod);
}

MPoly mp_sub(const MPoly& a, const MPoly& b, u64 mod) {
    MPoly nb = b;
    for (auto& t : nb.terms) t.c = mod - (t.c % mod);
    MPoly r = a;
    r.terms.insert(r.terms.end(), nb.terms.begin(), nb.terms.end());
    return mp_normalize(std::move(r), mod);
}

MPoly mp_mul(const MPoly& a, const MPoly& b, u64 mod) {
    MPoly r{a.nvars, {}};
    for (const auto& s : a.terms)
        for (const auto& t : b.terms) {
            std::vector<u32> e(a.nvars);
            for (int v = 0; v < a.nvars; ++v) e[v] = s.e[v] + t.e[v];
            r.terms.push_back({std::move(e), mulmod(s.c % mod, t.c % mod, mod)});
        }
    return mp_normalize(std::move(r), mod);
}

MPoly mp_scale(const MPoly& a, u64 c, u64 mod) {
    MPoly r = a;
    for (auto& t : r.terms) t.c = mulmod(t.c % mod, c % mod, mod);
    return mp_normalize(std::move(r), mod);
}

MPoly mp_pow(const MPoly& a, u32 k, u64 mod) {
    MPoly r = MPoly::constant(a.nvars, 1, mod);
    MPoly b = a;
    while (k) {
        if (k & 1) r = mp_mul(r, b, mod);
        b = mp_mul(b, b, mod);
        k >>= 1;
    }
    return r;
}

MPoly mp_reduce(const MPoly& a, u64 mod) { return mp_normalize(a, mod); }

bool mp_equal(const MPoly& a, const MPoly& b) {
    if (a.nvars != b.nvars || a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].e != b.terms[i].e || a.terms[i].c != b.terms[i].c) return false;
    return true;
}

MPoly mp_power_vars(const MPoly& a, u32 k) {
    MPoly r = a;
    for (auto& t : r.terms)
        for (auto& e : t.e) e *= k;
    std::sort(r.terms.begin(), r.terms.end(), [](const auto& x, const auto& y) { return x.e < y.e; });
    return r;
}

std::string MPoly::str(const std::vector<std::string>& vars) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (!first) os << " + ";
        first = false;
        bool wrote = false;
        bool allzero = true;
        for (u32 e : t.e) allzero = allzero && e == 0;
        if (t.c != 1 || allzero) {
            os << t.c;
            wrote = true;
        }
        for (size_t v = 0; v < t.e.size(); ++v) {
            if (t.e[v] == 0) continue;
            if (wrote) os << "*";
            os << vars[v];
            if (t.e[v] > 1) os << "^" << t.e[v];
            wrote = true;
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;
    u64 mod;

    void skip() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    MPoly expr() {
        MPoly r = term();
        for (;;) {
            skip();
            if (eat('+'))
                r = mp_add(r, term(), mod);
            else if (eat('-'))
                r = mp_sub(r, term(), mod);
            else
                return r;
        }
    }

    MPoly term() {
        MPoly r = factor();
        for (;;) {
            skip();
            if (eat('*'))
                r = mp_mul(r, factor(), mod);
            else if (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '('))
                r = mp_mul(r, factor(), mod); // juxtaposition: 3x, 2(x+1)
            else
                return r;
        }
    }

    MPoly factor() {
        skip();
        MPoly base = atom();
        skip();
        if (eat('^')) {
            skip();
            u64 k = number();
            require(k <= 64, Err::bad_input, "exponent too large");
            return mp_pow(base, (u32)k, mod);
        }
        return base;
    }

    MPoly atom() {
        skip();
        require(pos < s.size(), Err::bad_input, "unexpected end of polynomial");
        if (eat('(')) {
            MPoly r = expr();
            require(eat(')'), Err::bad_input, "missing ')' in polynomial");
            return r;
        }
        if (s[pos] == '-') {
            ++pos;
            return mp_sub(MPoly::zero((int)vars.size()), factor(), mod);
        }
        if (std::isdigit((unsigned char)s[pos])) return MPoly::constant((int)vars.size(), number(), mod);
        // variable name: longest match against the declared list
        int best = -1;
        size_t best_len = 0;
        for (size_t v = 0; v < vars.size(); ++v) {
            if (s.compare(pos, vars[v].size(), vars[v]) == 0 && vars[v].size() > best_len) {
                best = (int)v;
                best_len = vars[v].size();
            }
        }
        require(best >= 0, Err::bad_input, "unknown symbol in polynomial at '" + s.substr(pos, 8) + "'");
        pos += best_len;
        return MPoly::variable((int)vars.size(), best);
    }

    u64 number() {
        skip();
        require(pos < s.size() && std::isdigit((unsigned char)s[pos]), Err::bad_input, "expected a number");
        u64 v = 0;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
            v = addmod(mulmod(v, 10, mod), (u64)(s[pos] - '0') % mod, mod);
            ++pos;
        }
        return v;
    }
};

} // namespace

MPoly mp_parse(const std::string& text, const std::vector<std::string>& vars, u64 mod) {
    Parser p{text, 0, vars, mod};
    MPoly r = p.expr();
    p.skip();
    require(p.pos == p.s.size(), Err::bad_input, "trailing characters in polynomial: '" + text.substr(p.pos) + "'");
    return r;
}

} // namespace padl
