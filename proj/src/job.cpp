#include "padl/job.hpp"

#include <sstream>

namespace padl {

using nlohmann::json;

namespace {

std::vector<std::string> default_vars(int d) {
    if (d == 1) return {"t"};
    static const char* names[] = {"x", "y", "z", "w", "u", "v"};
    require(d <= 6, Err::bad_input, "more than six variables need explicit names");
    return std::vector<std::string>(names, names + d);
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    if (j.contains(key)) return j.at(key).get<T>();
    return fallback;
}

} // namespace

JobSpec JobSpec::parse(const json& j) {
    require(j.is_object(), Err::bad_input, "job must be a JSON object");
    JobSpec s;
    require(j.contains("command"), Err::bad_input, "job is missing 'command'");
    s.command = j.at("command").get<std::string>();
    s.p = get_or<u64>(j, "p", 2);
    require(is_prime_u64(s.p), Err::bad_input, "p must be prime");
    s.a = get_or<int>(j, "a", 1);
    s.N = get_or<int>(j, "N", 6);
    s.D = get_or<int>(j, "D", 6);
    s.B = get_or<int>(j, "B", 0);
    s.Dmax = get_or<int>(j, "Dmax", 3);
    s.rpow = get_or<int>(j, "rpow", 1);
    s.twist = get_or<int>(j, "twist", 0);
    s.budget = get_or<u64>(j, "budget", 10'000'000);
    s.workers = get_or<int>(j, "workers", 1);
    s.format = get_or<std::string>(j, "format", "json");
    require(s.N >= 1 && s.N <= 40 && s.D >= 0 && s.D <= 64 && s.a >= 1 && s.Dmax >= 1,
            Err::bad_input, "parameter out of range");
    (void)pow_u64(s.p, s.N); // range check

    if (j.contains("variety")) {
        const json& v = j.at("variety");
        s.d = get_or<int>(v, "d", 1);
        s.vars = v.contains("vars") ? v.at("vars").get<std::vector<std::string>>() : default_vars(s.d);
        require((int)s.vars.size() == s.d, Err::bad_input, "variable list does not match dimension");
        if (v.contains("equations")) s.equations = v.at("equations").get<std::vector<std::string>>();
        s.inverted = get_or<std::string>(v, "inverted", "");
    } else {
        s.vars = default_vars(s.d);
    }

    if (j.contains("fmodule")) {
        const json& m = j.at("fmodule");
        s.matrix = m.at("matrix").get<std::vector<std::vector<std::string>>>();
        s.rank = (int)s.matrix.size();
        if (m.contains("gpows")) s.gpows = m.at("gpows").get<std::vector<std::vector<u32>>>();
        if (m.contains("frobenius")) s.frob_images = m.at("frobenius").get<std::vector<std::string>>();
        s.twist = get_or<int>(m, "twist", s.twist);
    }

    if (j.contains("character")) {
        const json& c = j.at("character");
        s.fbars = c.at("fbars").get<std::vector<std::string>>();
        s.c0 = get_or<std::string>(c, "C0", "1");
    }

    if (j.contains("lfun")) {
        const json& l = j.at("lfun");
        s.with_expsum = get_or<bool>(l, "expsum", true);
        s.with_integrality = get_or<bool>(l, "integrality", false);
        s.with_weierstrass = get_or<bool>(l, "weierstrass", false);
        s.alpha = get_or<std::string>(l, "alpha", "");
        s.rpow = get_or<int>(l, "rpow", s.rpow);
    }

    if (j.contains("legendre")) {
        const json& l = j.at("legendre");
        s.lambda = get_or<std::string>(l, "lambda", "all");
        s.lambda_degree = get_or<int>(l, "degree", 1);
    }
    return s;
}

json JobSpec::echo() const {
    json j;
    j["command"] = command;
    j["p"] = p;
    j["a"] = a;
    j["N"] = N;
    j["D"] = D;
    j["B"] = B;
    j["Dmax"] = Dmax;
    j["rpow"] = rpow;
    j["twist"] = twist;
    j["budget"] = budget;
    j["workers"] = workers;
    j["format"] = format;
    json v;
    v["d"] = d;
    v["vars"] = vars;
    v["equations"] = equations;
    v["inverted"] = inverted;
    j["variety"] = v;
    if (!matrix.empty()) {
        json m;
        m["matrix"] = matrix;
        if (!gpows.empty()) m["gpows"] = gpows;
        if (!frob_images.empty()) m["frobenius"] = frob_images;
        m["twist"] = twist;
        j["fmodule"] = m;
    }
    if (!fbars.empty()) {
        json c;
        c["fbars"] = fbars;
        c["C0"] = c0;
        j["character"] = c;
    }
    json l;
    l["expsum"] = with_expsum;
    l["integrality"] = with_integrality;
    l["weierstrass"] = with_weierstrass;
    l["alpha"] = alpha;
    l["rpow"] = rpow;
    j["lfun"] = l;
    json lg;
    lg["lambda"] = lambda;
    lg["degree"] = lambda_degree;
    j["legendre"] = lg;
    return j;
}

json padic_json(const PadicInt& v) {
    json j;
    j["value"] = std::to_string(v.value());
    j["mod"] = std::to_string(v.p()) + "^" + std::to_string(v.prec());
    return j;
}

json scaled_json(const Scaled<PadicInt>& v) {
    json j = padic_json(v.num);
    if (v.den) j["den_pow"] = v.den;
    return j;
}

json series_json(const TruncSeries<Scaled<PadicInt>>& L) {
    json arr = json::array();
    for (const auto& c : L.c) arr.push_back(scaled_json(c));
    return arr;
}

json polygon_json(const NewtonPolygon& np) {
    json j;
    j["normalization"] = np.normalization;
    j["effective_degree"] = np.effdeg;
    json verts = json::array();
    for (auto& [k, v] : np.vertices) verts.push_back(json::array({k, v}));
    j["vertices"] = verts;
    json slopes = json::array();
    for (auto& [s, mult] : np.slopes) slopes.push_back(json::array({s.str(), mult}));
    j["slopes"] = slopes;
    return j;
}

namespace {

struct JobContext {
    JobSpec spec;
    u64 mod = 0;
    AffineVariety variety;
    std::unique_ptr<ZqPool> pool;
    EnumBudget budget;

    explicit JobContext(const JobSpec& s) : spec(s) {
        mod = pow_u64(s.p, s.N);
        variety.p = s.p;
        variety.a = s.a;
        variety.d = s.d;
        for (const auto& e : s.equations) variety.equations.push_back(mp_parse(e, s.vars, mod));
        if (!s.inverted.empty()) variety.inverted = mp_parse(s.inverted, s.vars, mod);
        pool = std::make_unique<ZqPool>(s.p, s.N);
        budget.max_candidates = s.budget;
    }

    FrobeniusLift lift() const {
        if (spec.frob_images.empty()) return FrobeniusLift::standard(spec.d, variety.q());
        FrobeniusLift F;
        F.d = spec.d;
        F.q = variety.q();
        for (const auto& img : spec.frob_images) F.images.push_back(mp_parse(img, spec.vars, mod));
        F.validate(spec.p, mod);
        return F;
    }

    FModule module() const {
        if (spec.matrix.empty()) {
            FModule M = FModule::trivial(variety, spec.N);
            M.lift = lift();
            M.twist = spec.twist;
            return M;
        }
        std::vector<std::vector<MPoly>> mat;
        for (const auto& row : spec.matrix) {
            mat.emplace_back();
            for (const auto& e : row) mat.back().push_back(mp_parse(e, spec.vars, mod));
        }
        FModule M = FModule::from_polys(variety, spec.N, lift(), mat,
                                        spec.gpows.empty() ? nullptr : &spec.gpows);
        M.twist = spec.twist;
        return M;
    }
};

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational::of(std::stol(s), 1);
    return Rational::of(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
}

json zq_json(const ZqElement& z) {
    json j;
    json coords = json::array();
    for (u64 c : z.coords()) coords.push_back(std::to_string(c));
    j["coords"] = coords;
    j["mod"] = std::to_string(z.ctx()->p()) + "^" + std::to_string(z.prec());
    return j;
}

json run_points(JobContext& ctx) {
    json out;
    auto cps = closed_points_up_to(ctx.variety, ctx.spec.Dmax, ctx.budget);
    json arr = json::array();
    for (const auto& c : cps) {
        json p;
        p["degree"] = c.degree;
        json rep = json::array();
        for (const auto& x : c.rep) rep.push_back(x.index());
        p["rep"] = rep;
        arr.push_back(p);
    }
    out["closed_points"] = arr;
    json counts = json::array();
    for (int r = 1; r <= ctx.spec.Dmax; ++r)
        counts.push_back(points_over(ctx.variety, r, ctx.budget).size());
    out["point_counts"] = counts;
    return out;
}

json run_teich(JobContext& ctx) {
    json out;
    FrobeniusLift F = ctx.lift();
    auto cps = closed_points_up_to(ctx.variety, ctx.spec.Dmax, ctx.budget);
    json arr = json::array();
    for (const auto& c : cps) {
        TeichPoint tp = teich_lift(ctx.variety, c, F, *ctx.pool);
        json e;
        e["degree"] = c.degree;
        json coords = json::array();
        for (const auto& z : tp.coords) coords.push_back(zq_json(z));
        e["coords"] = coords;
        arr.push_back(e);
    }
    out["teichmuller_points"] = arr;
    return out;
}

json run_lfun(JobContext& ctx, int& exit_code) {
    json out;
    FModule M = ctx.module();
    PolyModuleSource src{&M, ctx.pool.get(), ctx.budget, ctx.spec.workers};
    auto L = l_euler(src, ctx.spec.D);
    out["euler"] = series_json(L);
    if (ctx.spec.with_expsum) {
        auto Ls = l_expsum(src, ctx.spec.D);
        out["expsum"] = series_json(Ls);
        bool same = ts_equal(L, Ls);
        out["euler_equals_expsum"] = same;
        if (!same) exit_code = 2;
    }
    if (!ctx.spec.alpha.empty()) {
        Rational al = parse_rational(ctx.spec.alpha);
        if (ctx.spec.rpow > 1)
            out["alpha_part"] = series_json(l_power(src, ctx.spec.rpow, &al, ctx.spec.D));
        else
            out["alpha_part"] = series_json(l_alpha(src, al, ctx.spec.D));
    } else if (ctx.spec.rpow > 1) {
        out["power_series"] = series_json(l_power(src, ctx.spec.rpow, nullptr, ctx.spec.D));
    }
    if (ctx.spec.with_integrality) {
        auto rep = integrality_check(L, src.dim_x(), src.twist());
        json r;
        r["applicable"] = rep.applicable;
        r["integral"] = rep.integral;
        r["first_violation"] = rep.first_violation;
        r["note"] = rep.note;
        out["integrality"] = r;
        if (rep.applicable && !rep.integral) exit_code = 2;
    }
    if (ctx.spec.with_weierstrass) {
        auto rep = weierstrass_export(L);
        json r;
        r["polygon"] = polygon_json(rep.series_polygon);
        json sums = json::array();
        for (size_t k = 1; k < rep.char_sums.size(); ++k) sums.push_back(scaled_json(rep.char_sums[k]));
        r["char_sums"] = sums;
        r["has_candidate"] = rep.has_candidate;
        if (rep.has_candidate) {
            r["numerator"] = series_json(rep.numerator);
            r["denominator"] = series_json(rep.denominator);
            r["power_sum_agreement"] = rep.agree_to;
        }
        out["weierstrass"] = r;
    }
    return out;
}

json run_slopes(JobContext& ctx) {
    json out;
    FModule M = ctx.module();
    PolyModuleSource src{&M, ctx.pool.get(), ctx.budget, ctx.spec.workers};
    auto cps = src.closed_points(ctx.spec.Dmax);
    json arr = json::array();
    for (const auto& x : cps) {
        FiberFrobenius fib = src.full_fiber(x);
        json e;
        e["degree"] = x.degree;
        json rep = json::array();
        for (const auto& c : x.rep) rep.push_back(c.index());
        e["rep"] = rep;
        json cp = json::array();
        for (const auto& c : fib.charpoly.c) cp.push_back(padic_json(c));
        e["charpoly"] = cp;
        NewtonPolygon np = newton_polygon(fib.charpoly);
        np.normalization = "ord(q^deg x) = 1";
        // report slopes in the fiber normalization
        json slopes = json::array();
        for (auto& [s, mult] : np.slopes) {
            Rational norm = Rational::of(s.n + (long)fib.twist_per_deg * s.d,
                                         s.d * (long)fib.a * fib.r);
            slopes.push_back(json::array({norm.str(), mult}));
        }
        e["slopes"] = slopes;
        json factors = json::array();
        for (auto& [s, f] : fiber_slope_factors(fib)) {
            json fj;
            fj["slope"] = s.str();
            json cf = json::array();
            for (const auto& c : f.c) cf.push_back(padic_json(c));
            fj["factor"] = cf;
            factors.push_back(fj);
        }
        e["slope_factors"] = factors;
        arr.push_back(e);
    }
    out["fibers"] = arr;
    return out;
}

json run_character(JobContext& ctx, int& exit_code) {
    json out;
    u64 mod = ctx.mod;
    std::vector<std::string> xv;
    for (int i = 0; i < ctx.spec.d; ++i) xv.push_back(ctx.spec.vars[i]);
    std::vector<MPoly> fb;
    for (const auto& f : ctx.spec.fbars) fb.push_back(mp_parse(f, xv, mod));
    CharacterData chi = make_character(ctx.spec.p, ctx.spec.a, ctx.spec.N, ctx.spec.d, fb);

    bool all_ok = true;
    json orth = json::array();
    AffineVariety xspace;
    xspace.p = ctx.spec.p;
    xspace.a = ctx.spec.a;
    xspace.d = ctx.spec.d;
    for (int r = 1; r <= ctx.spec.Dmax; ++r) {
        for (const auto& x : points_over(xspace, r, ctx.budget)) {
            EisPadic sum = orthogonality_sum(chi, x, r, ctx.budget);
            bool onX = true;
            for (const auto& f : fb) onX = onX && eval_over_fq(f, x).is_zero();
            u64 qrs = 1;
            for (int i = 0; i < chi.s(); ++i) qrs *= pow_u64(chi.q(), r);
            bool ok = onX ? sum == sum.from_int_like((long long)qrs) : sum.is_zero();
            all_ok = all_ok && ok;
            json e;
            json coords = json::array();
            for (const auto& c : x) coords.push_back(c.index());
            e["x"] = coords;
            e["r"] = r;
            e["on_zero_locus"] = onX;
            e["ok"] = ok;
            orth.push_back(e);
        }
    }
    out["orthogonality"] = orth;

    json orbit = json::array();
    AffineVariety full;
    full.p = ctx.spec.p;
    full.a = ctx.spec.a;
    full.d = ctx.spec.d + chi.s();
    for (int r = 1; r <= std::min(2, ctx.spec.Dmax); ++r) {
        for (const auto& xy : points_over(full, r, ctx.budget)) {
            bool ok = orbit_product_matches_psi(chi, xy, r, *ctx.pool);
            all_ok = all_ok && ok;
            json e;
            json coords = json::array();
            for (const auto& c : xy) coords.push_back(c.index());
            e["xy"] = coords;
            e["r"] = r;
            e["ok"] = ok;
            orbit.push_back(e);
        }
    }
    out["orbit_products"] = orbit;
    out["all_checks_pass"] = all_ok;
    if (!all_ok) exit_code = 2;
    return out;
}

json run_affine_reduction(JobContext& ctx, int& exit_code) {
    u64 mod = ctx.mod;
    std::vector<std::string> xv;
    for (int i = 0; i < ctx.spec.d; ++i) xv.push_back(ctx.spec.vars[i]);
    std::vector<MPoly> fb;
    for (const auto& f : ctx.spec.fbars) fb.push_back(mp_parse(f, xv, mod));
    CharacterData chi = make_character(ctx.spec.p, ctx.spec.a, ctx.spec.N, ctx.spec.d, fb);
    MPoly C0 = mp_parse(ctx.spec.c0, xv, mod);
    auto rep = affine_reduction_check(chi, C0, ctx.spec.twist, ctx.spec.D, *ctx.pool, ctx.budget);
    json out;
    out["ok"] = rep.ok;
    out["agree_to"] = rep.agree_to;
    out["min_precision"] = rep.min_prec;
    out["note"] = rep.note;
    if (!rep.ok) exit_code = 2;
    return out;
}

template <class R>
json trace_report_json(const TraceFormulaReport<R>& rep) {
    json out;
    out["stable"] = rep.stable;
    out["match"] = rep.match;
    out["agree_to"] = rep.agree_to;
    out["i1_block_divisible_by_p"] = rep.i1_divisible;
    return out;
}

json eis_scaled_json(const Scaled<EisPadic>& v) {
    json j;
    json coords = json::array();
    for (const auto& c : v.num.coeffs()) coords.push_back(padic_json(c));
    j["pi_coords"] = coords;
    if (v.den) j["den_pow"] = v.den;
    return j;
}

json eis_series_json(const TruncSeries<Scaled<EisPadic>>& L) {
    json arr = json::array();
    for (const auto& c : L.c) arr.push_back(eis_scaled_json(c));
    return arr;
}

json run_trace_formula(JobContext& ctx, int& exit_code) {
    json out;
    int B = ctx.spec.B > 0 ? ctx.spec.B
                           : default_basis_bound(ctx.variety.q(), ctx.spec.D, ctx.spec.N);
    out["B"] = B;
    if (!ctx.spec.fbars.empty()) {
        auto E = SplittingFunction::make(ctx.spec.p, ctx.spec.a, ctx.spec.N);
        MPoly f = mp_parse(ctx.spec.fbars[0], {ctx.spec.vars[0]}, ctx.mod);
        auto rep = trace_formula_check_dwork(E, f, ctx.spec.p, ctx.spec.a, ctx.spec.N, ctx.spec.D,
                                             B, *ctx.pool, ctx.budget);
        out["report"] = trace_report_json(rep);
        out["euler"] = eis_series_json(rep.euler_side);
        out["trace_side"] = eis_series_json(rep.trace_side);
        if (!rep.match || !rep.stable) exit_code = 2;
    } else {
        FModule M = ctx.module();
        auto rep = trace_formula_check(M, ctx.spec.D, B, *ctx.pool, ctx.budget);
        out["report"] = trace_report_json(rep);
        out["euler"] = series_json(rep.euler_side);
        out["trace_side"] = series_json(rep.trace_side);
        if (!rep.match || !rep.stable) exit_code = 2;
    }
    return out;
}

json legendre_row(u64 p, int N, const FqElem& lambda, ZqPool& pool, const EnumBudget& budget,
                  bool& agree_all) {
    json row;
    row["lambda"] = lambda.index();
    LegendreFiber f = legendre_count(p, lambda, N, 2, budget);
    row["degree"] = lambda.ctx()->deg();
    row["class"] = f.ordinary ? "ordinary" : "supersingular";
    row["trace"] = f.trace_a;
    row["count_deg1"] = f.counts[0];
    if (f.ordinary) {
        PadicInt u1 = unit_root_from_counts(f, N);
        PadicInt u2 = unit_root_series_ratio(p, lambda, N, pool);
        row["unit_root"] = padic_json(u1);
        row["unit_root_series_ratio"] = padic_json(u2);
        bool agree = u1 == u2;
        row["routes_agree"] = agree;
        agree_all = agree_all && agree;
    }
    return row;
}

json run_zeta_legendre(JobContext& ctx, int& exit_code) {
    json out;
    bool agree = true;
    json rows = json::array();
    int deg = ctx.spec.lambda_degree;
    auto fctx = FqContext::make(ctx.spec.p, deg);
    if (ctx.spec.lambda == "all") {
        for (u64 i = 0; i < fctx->order(); ++i) {
            FqElem l = FqElem::from_index(fctx, i);
            if (l.is_zero() || l == FqElem::from_scalar(fctx, 1)) continue;
            rows.push_back(legendre_row(ctx.spec.p, ctx.spec.N, l, *ctx.pool, ctx.budget, agree));
        }
    } else {
        FqElem l = FqElem::from_index(fctx, std::stoull(ctx.spec.lambda));
        rows.push_back(legendre_row(ctx.spec.p, ctx.spec.N, l, *ctx.pool, ctx.budget, agree));
    }
    out["rows"] = rows;
    out["all_routes_agree"] = agree;
    if (!agree) exit_code = 2;
    return out;
}

json run_xi_eta(JobContext& ctx) {
    auto rep = xi_eta_diagnostic(ctx.spec.p, ctx.spec.N);
    json out;
    auto rows = [&](const std::vector<XiEtaRow>& v) {
        json arr = json::array();
        for (const auto& r : v) {
            json e;
            e["level"] = r.level;
            e["num_degree"] = r.num_degree;
            e["den_degree"] = r.den_degree;
            e["g_exponent"] = r.g_exponent;
            e["within_bound"] = r.within_bound;
            arr.push_back(e);
        }
        return arr;
    };
    out["xi"] = rows(rep.xi);
    out["eta"] = rows(rep.eta);
    return out;
}

} // namespace

JobResult run_job(const JobSpec& spec) {
    JobResult res;
    res.doc["schema_version"] = 1;
    res.doc["job"] = spec.echo();
    json results;
    int exit_code = 0;
    JobContext ctx(spec);
    if (spec.command == "points")
        results = run_points(ctx);
    else if (spec.command == "teich")
        results = run_teich(ctx);
    else if (spec.command == "lfun")
        results = run_lfun(ctx, exit_code);
    else if (spec.command == "slopes")
        results = run_slopes(ctx);
    else if (spec.command == "character")
        results = run_character(ctx, exit_code);
    else if (spec.command == "affine-reduction")
        results = run_affine_reduction(ctx, exit_code);
    else if (spec.command == "trace-formula")
        results = run_trace_formula(ctx, exit_code);
    else if (spec.command == "zeta-legendre")
        results = run_zeta_legendre(ctx, exit_code);
    else if (spec.command == "xi-eta")
        results = run_xi_eta(ctx);
    else
        fail(Err::bad_input, "unknown command '" + spec.command + "'");
    res.doc["results"] = results;
    res.exit_code = exit_code;
    return res;
}

} // namespace padl
