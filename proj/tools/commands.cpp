#include "commands.hpp"

#include "polycurve/cover_classifier.hpp"
#include "polycurve/cubic_classify.hpp"
#include "polycurve/elliptic_kodaira.hpp"
#include "polycurve/hermitian_domain.hpp"
#include "polycurve/poly_text.hpp"
#include "polycurve/ruled_cohomology.hpp"
#include "polycurve/tensor_endo.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace polycurve::cli {

namespace {

// --- record access ----------------------------------------------------------

void allow_fields(const json& rec, std::initializer_list<const char*> names) {
    if (!rec.is_object()) throw RecordError("", "record must be a JSON object");
    const std::set<std::string> ok(names.begin(), names.end());
    for (const auto& [k, v] : rec.items())
        if (!ok.count(k)) throw RecordError(k, "unknown field '" + k + "'");
}

bool present(const json& rec, const char* key) { return rec.contains(key) && !rec.at(key).is_null(); }

std::optional<long> opt_long(const json& rec, const char* key) {
    if (!present(rec, key)) return std::nullopt;
    const json& v = rec.at(key);
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        std::size_t used = 0;
        try {
            const long x = std::stol(s, &used);
            if (used == s.size()) return x;
        } catch (const std::exception&) {
        }
    }
    throw RecordError(key, std::string("field '") + key + "' must be an integer");
}

long get_long(const json& rec, const char* key) {
    if (auto v = opt_long(rec, key)) return *v;
    throw RecordError(key, std::string("missing field '") + key + "'", true);
}

std::optional<std::string> opt_string(const json& rec, const char* key) {
    if (!present(rec, key)) return std::nullopt;
    if (!rec.at(key).is_string()) throw RecordError(key, std::string("field '") + key + "' must be a string");
    return rec.at(key).get<std::string>();
}

std::string get_string(const json& rec, const char* key) {
    if (auto v = opt_string(rec, key)) return *v;
    throw RecordError(key, std::string("missing field '") + key + "'", true);
}

std::optional<bool> opt_bool(const json& rec, const char* key) {
    if (!present(rec, key)) return std::nullopt;
    const json& v = rec.at(key);
    if (v.is_boolean()) return v.get<bool>();
    if (v.is_string() && (v == "true" || v == "false")) return v == "true";
    throw RecordError(key, std::string("field '") + key + "' must be true or false");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        const auto b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
    }
    return out;
}

/// A list given either as a JSON array of strings/numbers or as a separated string.
std::vector<std::string> opt_list(const json& rec, const char* key, char sep) {
    if (!present(rec, key)) return {};
    const json& v = rec.at(key);
    if (v.is_string()) return split(v.get<std::string>(), sep);
    if (!v.is_array()) throw RecordError(key, std::string("field '") + key + "' must be a list");
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    return out;
}

std::vector<long> to_longs(const std::vector<std::string>& items, const char* key) {
    std::vector<long> out;
    for (const auto& s : items) {
        json tmp = {{key, s}};
        out.push_back(get_long(tmp, key));
    }
    return out;
}

Mode mode_or(const Config& cfg, Mode fallback) { return cfg.mode.value_or(fallback); }

// --- scalars ------------------------------------------------------------------

template <PolyScalar S>
std::string show(const S& s) {
    return to_string(MultiPoly<S>::constant({}, s));
}

std::string show(const Complex& c) {
    char buf[64];
    const double re = std::abs(c.real()) < 1e-300 ? 0.0 : c.real(), im = c.imag();
    if (im == 0.0)
        std::snprintf(buf, sizeof buf, "%.12g", re);
    else if (re == 0.0)
        std::snprintf(buf, sizeof buf, "%.12gi", im);
    else
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
    return buf;
}

template <PolyScalar S>
S parse_scalar(const std::string& text) {
    const auto p = parse_poly<S>(text, {});
    return p.constant_term();
}

std::vector<std::string> vars_of(const json& rec, std::vector<std::string> fallback) {
    auto v = opt_list(rec, "vars", ',');
    return v.empty() ? fallback : v;
}

bool gaussian(const json& rec) {
    const auto f = opt_string(rec, "field").value_or("Q");
    if (f != "Q" && f != "Qi") throw RecordError("field", "field must be Q or Qi");
    return f == "Qi";
}

json findings_json(const std::vector<Finding>& fs) {
    json out = json::array();
    for (const auto& f : fs) out.push_back({{"severity", to_string(f.severity)}, {"code", f.code}, {"message", f.message}});
    return out;
}

}  // namespace

// --- classify-surface -----------------------------------------------------------

Outcome classify_surface_cmd(const json& rec, const Config&) {
    allow_fields(rec, {"K2", "chi", "q", "p_g", "P2", "P12", "e", "h0_omega_mk", "tensor_status", "kaehler", "claimed",
                       "dimension", "tensor_present", "k_ample"});
    if (opt_long(rec, "dimension").value_or(2) == 3) {
        const auto v = classify_threefold(opt_bool(rec, "tensor_present").value_or(false),
                                          opt_bool(rec, "k_ample").value_or(false));
        return {{{"dimension", 3}, {"cover", to_string(v.cover)}, {"note", v.note}}, to_string(v.cover)};
    }
    if (opt_long(rec, "dimension").value_or(2) != 2) throw RecordError("dimension", "dimension must be 2 or 3");

    SurfaceInvariants s;
    s.K2 = opt_long(rec, "K2");
    s.chi = opt_long(rec, "chi");
    s.q = opt_long(rec, "q");
    s.p_g = opt_long(rec, "p_g");
    s.P2 = opt_long(rec, "P2");
    s.P12 = opt_long(rec, "P12");
    s.e = opt_long(rec, "e");
    s.h0_omega_mk = opt_long(rec, "h0_omega_mk");
    s.kaehler = opt_bool(rec, "kaehler");
    if (auto t = opt_string(rec, "tensor_status")) {
        const auto ts = parse_tensor_status(*t);
        if (!ts) throw RecordError("tensor_status", "unknown tensor_status '" + *t + "'");
        s.tensor_status = *ts;
    }
    const auto v = classify_surface(s);
    json out = {{"cover", to_string(v.cover)}, {"fired_rule", v.fired_rule}, {"missing_data", v.missing_data},
                {"findings", findings_json(v.findings)}};
    if (auto c = opt_string(rec, "claimed")) {
        const auto cov = parse_cover(*c);
        if (!cov) throw RecordError("claimed", "unknown cover '" + *c + "'");
        out["claimed"] = *c;
        out["claimed_findings"] = findings_json(consistency_report(s, *cov));
    }
    return {out, to_string(v.cover)};
}

// --- classify-cubic ---------------------------------------------------------------

namespace {

template <ExactScalar S>
Outcome cubic_exact(const json& rec, const Config& cfg) {
    const auto vars = vars_of(rec, {"x0", "x1", "x2"});
    const auto f = parse_poly<S>(get_string(rec, "poly"), vars);
    const auto c = classify(f);
    const auto h = holonomy_verdict(c.kind);
    json pts = json::array();
    for (const auto& p : c.locus.points)
        pts.push_back({{"coords", json::array({show(p.coords[0]), show(p.coords[1]), show(p.coords[2])})}, {"type", to_string(p.type)}});
    json out = {{"class", to_string(c.kind)}, {"verdict", to_string(h.kind)}, {"clause", h.clause},
                {"one_dimensional", c.locus.one_dimensional}};
    if (!c.locus.one_dimensional) {
        out["singular_count"] = c.locus.count;
        out["singular_points"] = pts;
        if (!c.locus.residual.empty()) out["residual"] = c.locus.residual;
    }
    if (c.kind == CubicKind::LinePlusConic) out["line_conic_intersections"] = c.line_conic_intersections;
    if (auto trials = opt_long(rec, "invariance_trials"))
        out["pgl_invariant"] = pgl_invariance_check(f, static_cast<int>(*trials), cfg.seed);
    return {out, to_string(c.kind)};
}

}  // namespace

Outcome classify_cubic_cmd(const json& rec, const Config& cfg) {
    allow_fields(rec, {"poly", "vars", "field", "invariance_trials"});
    if (mode_or(cfg, Mode::Exact) == Mode::Exact)
        return gaussian(rec) ? cubic_exact<GaussRational>(rec, cfg) : cubic_exact<Rational>(rec, cfg);

    if (present(rec, "invariance_trials")) throw UsageError("invariance_trials needs --mode exact");
    const auto f = parse_poly<Complex>(get_string(rec, "poly"), vars_of(rec, {"x0", "x1", "x2"}));
    const auto c = classify_float(f, cfg.tol);
    const auto h = holonomy_verdict(c.kind);
    json pts = json::array();
    for (const auto& p : c.points)
        pts.push_back({{"coords", json::array({show(p.coords[0]), show(p.coords[1]), show(p.coords[2])})}, {"type", to_string(p.type)}});
    json out = {{"class", to_string(c.kind)}, {"verdict", to_string(h.kind)}, {"clause", h.clause},
                {"one_dimensional", c.one_dimensional}};
    if (!c.one_dimensional) {
        out["singular_count"] = c.points.size();
        out["singular_points"] = pts;
        out["jacobian_length"] = c.jacobian_length;
    }
    if (c.kind == CubicKind::LinePlusConic) out["line_conic_intersections"] = c.line_conic_intersections;
    return {out, to_string(c.kind)};
}

// --- check-tensor --------------------------------------------------------------

namespace {

template <ExactScalar S>
json tensor_report(const json& rec, std::string& kind) {
    const auto vars = vars_of(rec, {"x", "y"});
    if (vars.size() != 2) throw RecordError("vars", "a surface tensor needs exactly two variables");
    SpecialTensor2<S> t{parse_poly<S>(get_string(rec, "a11"), vars), parse_poly<S>(get_string(rec, "a12"), vars),
                        parse_poly<S>(get_string(rec, "a22"), vars)};
    const auto base = opt_list(rec, "base", ',');
    if (!base.empty()) {
        if (base.size() != 2) throw RecordError("base", "base point needs two coordinates");
        t.base = {parse_scalar<S>(base[0]), parse_scalar<S>(base[1])};
    }
    t.validate();
    const auto m = to_endomorphism(t);
    const auto dc = determinant_class(t);
    json out = {{"endomorphism", json::array({json::array({to_string(m.m11), to_string(m.m12)}),
                                              json::array({to_string(m.m21), to_string(m.m22)})})},
                {"trace", to_string(m.trace())},
                {"determinant", to_string(dc.det)},
                {"determinant_constant", dc.constant}};
    if (!dc.constant) {
        kind = "nonconstant_determinant";
    } else if (!dc.det.is_zero()) {
        try {
            json dirs = json::array();
            for (const auto& d : eigen_split(m))
                dirs.push_back({{"eigenvalue", show(d.eigenvalue)}, {"vector", json::array({to_string(d.v[0]), to_string(d.v[1])})}});
            out["eigendirections"] = dirs;
            kind = "split";
        } catch (const DomainError& e) {
            if (e.code() != "eigenvalue_not_in_field") throw;
            out["eigendirections"] = nullptr;
            out["note"] = e.what();
            kind = "split_outside_field";
        }
    } else {
        // [[a, b], [c, -a]] with a = m11, b = m12, c = m21.
        const auto n = nilpotent_decompose(m.m11, m.m12, m.m21);
        out["nilpotent"] = {{"delta", to_string(n.delta)},
                            {"beta", to_string(n.beta)},
                            {"gamma", to_string(n.gamma)},
                            {"z_length", n.z_length ? json(*n.z_length) : json(nullptr)}};
        kind = "nilpotent";
    }
    const auto bl = blowup_pullback(t);
    out["blowup"] = {{"dx2_numerator", to_string(bl.dx2_numerator)},
                     {"dx2", bl.dx2 ? json(to_string(*bl.dx2)) : json(nullptr)},
                     {"dxdu", to_string(bl.dxdu)},
                     {"du2", to_string(bl.du2)},
                     {"regular", bl.regular}};
    return out;
}

}  // namespace

Outcome check_tensor_cmd(const json& rec, const Config& cfg) {
    allow_fields(rec, {"a11", "a12", "a22", "vars", "field", "base", "perm", "maps"});
    if (mode_or(cfg, Mode::Exact) != Mode::Exact) throw UsageError("check-tensor is exact only");
    json out = json::object();
    std::string kind = "product_sign";
    if (present(rec, "a11") || present(rec, "a12") || present(rec, "a22") || !present(rec, "perm"))
        out = gaussian(rec) ? tensor_report<GaussRational>(rec, kind) : tensor_report<Rational>(rec, kind);
    if (present(rec, "perm")) {
        std::vector<int> perm;
        for (long p : to_longs(opt_list(rec, "perm", ','), "perm")) perm.push_back(static_cast<int>(p - 1));
        std::vector<Mobius> maps(perm.size());
        const auto ms = opt_list(rec, "maps", ';');
        if (!ms.empty()) {
            if (ms.size() != perm.size()) throw RecordError("maps", "need one map per factor");
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const auto e = split(ms[i], ',');
                if (e.size() != 4) throw RecordError("maps", "a map is alpha,beta,gamma,delta");
                maps[i] = {parse_scalar<Rational>(e[0]), parse_scalar<Rational>(e[1]), parse_scalar<Rational>(e[2]),
                           parse_scalar<Rational>(e[3])};
            }
        }
        out["product_sign"] = show(product_tensor_sign(static_cast<int>(perm.size()), perm, maps));
    }
    return {out, kind};
}

// --- cohomology -------------------------------------------------------------------

Outcome cohomology_cmd(const json& rec, const Config&) {
    allow_fields(rec, {"n", "a", "b"});
    const long n = get_long(rec, "n");
    if (n < 0) throw DomainError("negative_n", "n must be nonnegative");
    const int ni = static_cast<int>(n);
    if (present(rec, "a") || present(rec, "b")) {
        const long a = get_long(rec, "a"), b = get_long(rec, "b");
        const long h0 = h0_line_bundle({ni, static_cast<int>(a), static_cast<int>(b)});
        return {{{"n", n}, {"a", a}, {"b", b}, {"h0", h0}}, "h0"};
    }
    const auto t = h0_tangent(ni);
    const auto v = rational_verdict(ni);
    json out = {{"n", n},
                {"special_tensor_space_dim", special_tensor_space_dim(ni)},
                {"h0_tangent",
                 {{"h0", t.h0}, {"relative", t.relative}, {"base", t.base}, {"correction", t.correction},
                  {"non_minimal", t.non_minimal}}},
                {"rational_verdict", to_string(v.kind)}};
    return {out, to_string(v.kind)};
}

// --- elliptic -------------------------------------------------------------------

Outcome elliptic_cmd(const json& rec, const Config&) {
    allow_fields(rec, {"b", "p_g", "chi", "fibers", "weierstrass"});
    json out = json::object();
    std::string verdict;
    const bool has_b = present(rec, "b"), has_pg = present(rec, "p_g");
    if (has_b || has_pg || present(rec, "chi")) {
        const long b = get_long(rec, "b"), pg = get_long(rec, "p_g");
        EllipticFibrationData d;
        d.b = b;
        d.p_g = pg;
        d.chi = opt_long(rec, "chi").value_or(1 - b + pg);
        d.validate();
        const auto ex = exists_special_tensor(b, pg);
        out["b"] = b;
        out["p_g"] = pg;
        out["chi"] = d.chi;
        out["deg_delta"] = deg_delta(d.chi, b);
        out["special_tensor_degree"] = special_tensor_degree(b, pg);
        out["exists"] = ex.exists;
        out["status"] = to_string(ex.status);
        out["reason"] = ex.reason;
        verdict = ex.exists ? "exists" : to_string(ex.status);
    }
    if (present(rec, "fibers")) {
        json fibers = json::array();
        const json& f = rec.at("fibers");
        std::vector<std::vector<long>> lists;
        if (f.is_array()) {
            for (const auto& item : f) {
                std::vector<std::string> parts;
                if (item.is_array())
                    for (const auto& x : item) parts.push_back(x.dump());
                else if (item.is_string())
                    parts = split(item.get<std::string>(), ',');
                else
                    throw RecordError("fibers", "each fiber is a list of multiplicities");
                lists.push_back(to_longs(parts, "fibers"));
            }
        } else {
            for (const auto& part : opt_list(rec, "fibers", ';')) lists.push_back(to_longs(split(part, ','), "fibers"));
        }
        for (const auto& m : lists) {
            const FiberData fd(m);
            const auto r = fiber_saturation_check(fd);
            fibers.push_back({{"multiplicities", m}, {"n_p", fd.n_p()}, {"ok", r.ok}, {"multiple_fiber", r.multiple_fiber},
                              {"trace", r.trace}});
        }
        out["fibers"] = fibers;
        if (verdict.empty()) verdict = "fibers_ok";
    }
    if (present(rec, "weierstrass")) {
        const auto w = weierstrass_instance(get_long(rec, "weierstrass"));
        out["weierstrass"] = {{"h", w.h},         {"b", w.b},          {"deg_H", w.deg_H},
                              {"deg_M", w.deg_M}, {"deg_g2", w.deg_g2}, {"deg_g3", w.deg_g3},
                              {"deg_KB", w.deg_KB}, {"deg_6M", w.deg_6M}, {"tensor_space_dim", w.tensor_space_dim}};
        if (verdict.empty()) verdict = "weierstrass";
    }
    if (out.empty()) throw RecordError("b", "give b and p_g, fibers, or weierstrass", true);
    return {out, verdict};
}

// --- verify-holonomy ------------------------------------------------------------

Outcome verify_holonomy_cmd(const json& rec, const Config& cfg) {
    allow_fields(rec, {"samples", "seed"});
    if (mode_or(cfg, Mode::Float) != Mode::Float) throw UsageError("verify-holonomy is a floating-point check");
    const long n = opt_long(rec, "samples").value_or(1000);
    if (n < 1) throw RecordError("samples", "samples must be positive");
    const auto seed = static_cast<std::uint64_t>(opt_long(rec, "seed").value_or(static_cast<long>(cfg.seed)));
    const auto st = verify_holonomy(static_cast<std::size_t>(n), seed);
    const bool pass = st.passes(cfg.tol);
    json out = {{"samples", st.samples},
                {"seed", st.seed},
                {"su22_max", st.su22_max},
                {"domain_preserved", st.domain_preserved},
                {"min_margin", st.min_margin},
                {"homomorphism_max", st.homomorphism_max},
                {"quartic_max", st.quartic_max},
                {"semiinvariance_max", st.semiinvariance_max},
                {"tensor_invariance_max", st.tensor_invariance_max},
                {"pass", pass}};
    return {out, pass ? "pass" : "fail", !pass};
}

// --- fixed-point ------------------------------------------------------------------

namespace {

std::vector<std::size_t> read_sigma(const json& rec) {
    std::vector<std::size_t> sigma;
    for (long s : to_longs(opt_list(rec, "sigma", ','), "sigma")) {
        if (s < 1) throw RecordError("sigma", "sigma entries are 1-based");
        sigma.push_back(static_cast<std::size_t>(s - 1));
    }
    if (sigma.empty()) throw RecordError("sigma", "missing field 'sigma'", true);
    return sigma;
}

template <typename S>
std::vector<SMat2<S>> read_psi(const json& rec) {
    std::vector<SMat2<S>> out;
    const json& v = rec.contains("psi") ? rec.at("psi") : json(nullptr);
    std::vector<std::vector<std::string>> mats;
    if (v.is_null()) throw RecordError("psi", "missing field 'psi'", true);
    if (v.is_array()) {
        for (const auto& m : v) {
            std::vector<std::string> e;
            if (!m.is_array()) throw RecordError("psi", "each matrix is a list of four entries");
            for (const auto& x : m)
                if (x.is_array())
                    for (const auto& y : x) e.push_back(y.is_string() ? y.get<std::string>() : y.dump());
                else
                    e.push_back(x.is_string() ? x.get<std::string>() : x.dump());
            mats.push_back(e);
        }
    } else {
        for (const auto& part : opt_list(rec, "psi", ';')) mats.push_back(split(part, ','));
    }
    for (const auto& e : mats) {
        if (e.size() != 4) throw RecordError("psi", "each matrix is a,b,c,d (row major)");
        out.push_back({{{parse_scalar<S>(e[0]), parse_scalar<S>(e[1])}, {parse_scalar<S>(e[2]), parse_scalar<S>(e[3])}}});
    }
    return out;
}

EigenChoice read_choice(const json& rec) {
    const auto c = opt_string(rec, "choice").value_or("larger");
    if (c == "larger") return EigenChoice::LargerModulus;
    if (c == "smaller") return EigenChoice::SmallerModulus;
    throw RecordError("choice", "choice must be larger or smaller");
}

json cycles_json(const std::vector<std::vector<std::size_t>>& cycles) {
    json out = json::array();
    for (const auto& c : cycles) {
        json cj = json::array();
        for (auto i : c) cj.push_back(i + 1);
        out.push_back(cj);
    }
    return out;
}

}  // namespace

Outcome fixed_point_cmd(const json& rec, const Config& cfg) {
    allow_fields(rec, {"sigma", "psi", "choice", "random"});
    if (auto n = opt_long(rec, "random")) {
        if (mode_or(cfg, Mode::Float) != Mode::Float) throw UsageError("random fixed-point runs are floating-point");
        std::mt19937_64 rng(cfg.seed);
        double worst = 0;
        long parabolic = 0;
        for (long i = 0; i < *n; ++i) {
            const auto fp = polydisk_fixed_point(random_polydisk_automorphism(rng), read_choice(rec));
            worst = std::max(worst, fp.residual);
            for (auto k : fp.cycle_kinds) parabolic += k == CycleKind::Parabolic;
        }
        const bool pass = worst <= cfg.tol;
        return {{{"samples", *n}, {"seed", cfg.seed}, {"max_residual", worst}, {"parabolic_cycles", parabolic}, {"pass", pass}},
                pass ? "pass" : "fail",
                !pass};
    }
    const auto sigma = read_sigma(rec);
    if (mode_or(cfg, Mode::Float) == Mode::Exact) {
        const PolydiskAutomorphism<Rational> a{sigma, read_psi<Rational>(rec)};
        const auto x = polydisk_fixed_point_exact(a, read_choice(rec));
        if (!x) throw DomainError("irrational_eigenvalues", "a cycle product has eigenvalues outside Q; use --mode float");
        json pts = json::array(), hom = json::array();
        for (const auto& p : *x) {
            pts.push_back(sgn(p[1]) == 0 ? std::string("inf") : show(Rational(p[0] / p[1])));
            hom.push_back(json::array({show(p[0]), show(p[1])}));
        }
        return {{{"point", pts}, {"homogeneous", hom}}, "ok"};
    }
    const PolydiskAutomorphism<Complex> a{sigma, read_psi<Complex>(rec)};
    const auto fp = polydisk_fixed_point(a, read_choice(rec));
    json pts = json::array(), hom = json::array(), kinds = json::array();
    for (const auto& p : fp.x) {
        pts.push_back(std::abs(p(1)) <= 1e-14 ? std::string("inf") : show(Complex(p(0) / p(1))));
        hom.push_back(json::array({show(Complex(p(0))), show(Complex(p(1)))}));
    }
    for (auto k : fp.cycle_kinds) kinds.push_back(to_string(k));
    const bool pass = fp.residual <= cfg.tol;
    return {{{"point", pts}, {"homogeneous", hom}, {"cycles", cycles_json(fp.cycles)}, {"cycle_kinds", kinds},
             {"residual", fp.residual}, {"pass", pass}},
            pass ? "ok" : "fail",
            !pass};
}

}  // namespace polycurve::cli
