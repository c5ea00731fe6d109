#include "polycurve/cover_classifier.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace polycurve {

namespace {

enum class Tri { False, True, Unknown };

// One condition of a rule: the fields it reads and a test run once all are known.
struct Condition {
    std::vector<std::string> fields;
    std::function<bool(const SurfaceInvariants&)> test;
};

struct Rule {
    Cover cover;
    std::string id;
    bool needs_kaehler;
    std::vector<Condition> conditions;
};

bool known(const SurfaceInvariants& s, const std::string& f) {
    if (f == "K2") return s.K2.has_value();
    if (f == "chi") return s.chi.has_value();
    if (f == "q") return s.q.has_value();
    if (f == "p_g") return s.p_g.has_value();
    if (f == "P2") return s.P2.has_value();
    if (f == "P12") return s.P12.has_value();
    if (f == "e") return s.e.has_value();
    if (f == "h0_omega_mk") return s.h0_omega_mk.has_value();
    if (f == "tensor_status") return s.tensor_status != TensorStatus::Unknown;
    if (f == "kaehler") return s.kaehler.has_value();
    throw std::logic_error("unknown field " + f);
}

bool unique_type(const SurfaceInvariants& s) {
    return s.tensor_status == TensorStatus::SemiSpecialUniqueType || s.tensor_status == TensorStatus::SpecialUnique;
}

const std::vector<Rule>& rules() {
    static const std::vector<Rule> r = {
        {Cover::Ball, "ball: Miyaoka-Yau equality K^2 = 9 chi > 0 with P2 > 0", false,
         {{{"K2", "chi"}, [](const auto& s) { return *s.K2 == 9 * *s.chi && *s.K2 > 0; }},
          {{"P2"}, [](const auto& s) { return *s.P2 > 0; }}}},
        {Cover::HxH, "bidisk: semi-special tensor of unique type, K^2 > 0, P2 >= 1", false,
         {{{"tensor_status"}, unique_type},
          {{"K2"}, [](const auto& s) { return *s.K2 > 0; }},
          {{"P2"}, [](const auto& s) { return *s.P2 >= 1; }}}},
        {Cover::P1xP1, "quadric: unique special tensor, K^2 = 8, P2 = 0, h0(Omega^1(-K)) = 6", false,
         {{{"tensor_status"}, [](const auto& s) { return s.tensor_status == TensorStatus::SpecialUnique; }},
          {{"K2"}, [](const auto& s) { return *s.K2 == 8; }},
          {{"P2"}, [](const auto& s) { return *s.P2 == 0; }},
          {{"h0_omega_mk"}, [](const auto& s) { return *s.h0_omega_mk == 6; }}}},
        {Cover::P1xC, "kaehler table: P12 = 0, q = 1, K^2 = 0", true,
         {{{"P12"}, [](const auto& s) { return *s.P12 == 0; }},
          {{"q"}, [](const auto& s) { return *s.q == 1; }},
          {{"K2"}, [](const auto& s) { return *s.K2 == 0; }}}},
        {Cover::P1xH, "kaehler table: P12 = 0, q >= 2, K^2 = 8(1 - q)", true,
         {{{"P12"}, [](const auto& s) { return *s.P12 == 0; }},
          {{"q"}, [](const auto& s) { return *s.q >= 2; }},
          {{"K2", "q"}, [](const auto& s) { return *s.K2 == 8 * (1 - *s.q); }}}},
        {Cover::C2, "kaehler table: P12 = 1, q in {1, 2}, K^2 = 0", true,
         {{{"P12"}, [](const auto& s) { return *s.P12 == 1; }},
          {{"q"}, [](const auto& s) { return *s.q == 1 || *s.q == 2; }},
          {{"K2"}, [](const auto& s) { return *s.K2 == 0; }}}},
        {Cover::CxH, "kaehler table: P12 >= 2, e = 0", true,
         {{{"P12"}, [](const auto& s) { return *s.P12 >= 2; }},
          {{"e"}, [](const auto& s) { return *s.e == 0; }}}},
    };
    return r;
}

std::string show(const std::optional<long>& v) { return v ? std::to_string(*v) : "?"; }

// Screens that do not depend on a verdict.
std::vector<Finding> identity_screens(const SurfaceInvariants& s) {
    std::vector<Finding> out;
    const std::array<std::pair<const char*, const std::optional<long>*>, 5> nonneg{
        {{"q", &s.q}, {"p_g", &s.p_g}, {"P2", &s.P2}, {"P12", &s.P12}, {"h0_omega_mk", &s.h0_omega_mk}}};
    for (const auto& [name, v] : nonneg)
        if (*v && **v < 0)
            out.push_back({Severity::Contradiction, "negative_dimension",
                           std::string(name) + " = " + std::to_string(**v) + " is a dimension and cannot be negative"});
    if (s.chi && s.q && s.p_g && *s.chi != 1 + *s.p_g - *s.q)
        out.push_back({Severity::Contradiction, "chi_identity",
                       "chi = " + show(s.chi) + " but 1 + p_g - q = " + std::to_string(1 + *s.p_g - *s.q)});
    if (s.chi && s.K2 && s.e && 12 * *s.chi != *s.K2 + *s.e)
        out.push_back({Severity::Contradiction, "noether_formula",
                       "12 chi = " + std::to_string(12 * *s.chi) + " but K^2 + e = " + std::to_string(*s.K2 + *s.e)});
    if (!s.chi && s.K2 && s.e && (*s.K2 + *s.e) % 12 != 0)
        out.push_back({Severity::Contradiction, "noether_formula",
                       "K^2 + e = " + std::to_string(*s.K2 + *s.e) + " is not divisible by 12"});
    return out;
}

bool has_contradiction(const std::vector<Finding>& f) {
    return std::any_of(f.begin(), f.end(), [](const Finding& x) { return x.severity == Severity::Contradiction; });
}

}  // namespace

std::string to_string(TensorStatus t) {
    switch (t) {
        case TensorStatus::None: return "None";
        case TensorStatus::SpecialUnique: return "SpecialUnique";
        case TensorStatus::SpecialNonUnique: return "SpecialNonUnique";
        case TensorStatus::SemiSpecialUniqueType: return "SemiSpecialUniqueType";
        case TensorStatus::SemiSpecialOther: return "SemiSpecialOther";
        case TensorStatus::Unknown: return "Unknown";
    }
    return "?";
}

std::string to_string(Cover c) {
    switch (c) {
        case Cover::P1xP1: return "P1xP1";
        case Cover::P1xC: return "P1xC";
        case Cover::P1xH: return "P1xH";
        case Cover::C2: return "C2";
        case Cover::CxH: return "CxH";
        case Cover::HxH: return "HxH";
        case Cover::Ball: return "Ball";
        case Cover::NoRuleApplies: return "NoRuleApplies";
        case Cover::Inconsistent: return "Inconsistent";
    }
    return "?";
}

std::string to_string(Severity s) {
    switch (s) {
        case Severity::Contradiction: return "contradiction";
        case Severity::Unverifiable: return "unverifiable";
        case Severity::Info: return "info";
    }
    return "?";
}

std::string to_string(ThreefoldCover c) { return c == ThreefoldCover::PolydiskH3 ? "PolydiskH3" : "NoRuleApplies"; }

std::optional<TensorStatus> parse_tensor_status(const std::string& s) {
    for (auto t : {TensorStatus::None, TensorStatus::SpecialUnique, TensorStatus::SpecialNonUnique,
                   TensorStatus::SemiSpecialUniqueType, TensorStatus::SemiSpecialOther, TensorStatus::Unknown})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

std::optional<Cover> parse_cover(const std::string& s) {
    for (auto c : {Cover::P1xP1, Cover::P1xC, Cover::P1xH, Cover::C2, Cover::CxH, Cover::HxH, Cover::Ball,
                   Cover::NoRuleApplies, Cover::Inconsistent})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

SurfaceInvariants complete(const SurfaceInvariants& in) {
    SurfaceInvariants s = in;
    for (int pass = 0; pass < 2; ++pass) {
        if (!s.chi && s.q && s.p_g) s.chi = 1 + *s.p_g - *s.q;
        if (!s.q && s.chi && s.p_g) s.q = 1 + *s.p_g - *s.chi;
        if (!s.p_g && s.chi && s.q) s.p_g = *s.chi + *s.q - 1;
        if (!s.e && s.chi && s.K2) s.e = 12 * *s.chi - *s.K2;
        if (!s.K2 && s.chi && s.e) s.K2 = 12 * *s.chi - *s.e;
        if (!s.chi && s.K2 && s.e && (*s.K2 + *s.e) % 12 == 0) s.chi = (*s.K2 + *s.e) / 12;
    }
    return s;
}

std::vector<Finding> consistency_report(const SurfaceInvariants& raw, std::optional<Cover> claimed) {
    std::vector<Finding> out = identity_screens(raw);
    const SurfaceInvariants s = complete(raw);
    const Cover c = claimed ? *claimed : classify_surface(raw).cover;

    if (c == Cover::HxH || c == Cover::P1xP1) {
        if (s.K2 && s.chi) {
            if (*s.K2 != 8 * *s.chi)
                out.push_back({Severity::Contradiction, "k2_eq_8chi",
                               to_string(c) + " quotients satisfy K^2 = 8 chi, but " + show(s.K2) + " != " +
                                   std::to_string(8 * *s.chi)});
        } else {
            out.push_back({Severity::Unverifiable, "k2_eq_8chi", "K^2 = 8 chi cannot be checked: K2 or chi unknown"});
        }
    }
    if (c == Cover::Ball) {
        if (s.K2 && s.chi) {
            if (*s.K2 != 9 * *s.chi)
                out.push_back({Severity::Contradiction, "k2_eq_9chi",
                               "ball quotients satisfy K^2 = 9 chi, but " + show(s.K2) + " != " + std::to_string(9 * *s.chi)});
        } else {
            out.push_back({Severity::Unverifiable, "k2_eq_9chi", "K^2 = 9 chi cannot be checked: K2 or chi unknown"});
        }
    }
    if (c == Cover::HxH && s.chi && *s.chi >= 1 && s.P2 && *s.P2 < 2)
        out.push_back({Severity::Info, "p2_at_least_2",
                       "with K ample and chi >= 1, vanishing theorems give P2 >= 2; here P2 = " + show(s.P2)});
    if (s.q && *s.q == 0 && s.tensor_status == TensorStatus::SemiSpecialUniqueType && s.P2 && *s.P2 >= 2)
        out.push_back({Severity::Info, "open_question",
                       "q = 0 with a semi-special tensor of unique type and P2 >= 2: whether such a surface is always "
                       "a bidisk quotient is an open question"});
    return out;
}

CoverVerdict classify_surface(const SurfaceInvariants& raw) {
    CoverVerdict v{Cover::NoRuleApplies, "", {}, identity_screens(raw)};
    if (has_contradiction(v.findings)) {
        v.cover = Cover::Inconsistent;
        return v;
    }
    const SurfaceInvariants s = complete(raw);
    const bool kaehler_ok = !s.kaehler || *s.kaehler;

    std::optional<std::vector<std::string>> closest;
    for (const auto& rule : rules()) {
        if (rule.needs_kaehler && !kaehler_ok) continue;
        Tri status = Tri::True;
        std::vector<std::string> missing;
        for (const auto& cond : rule.conditions) {
            bool all_known = true;
            for (const auto& f : cond.fields)
                if (!known(s, f)) {
                    all_known = false;
                    if (std::find(missing.begin(), missing.end(), f) == missing.end()) missing.push_back(f);
                }
            if (!all_known)
                status = status == Tri::False ? Tri::False : Tri::Unknown;
            else if (!cond.test(s))
                status = Tri::False;
        }
        if (status == Tri::True) {
            v.cover = rule.cover;
            v.fired_rule = rule.id;
            v.findings = consistency_report(raw, rule.cover);
            if (has_contradiction(v.findings)) {
                v.cover = Cover::Inconsistent;
                v.fired_rule.clear();
            }
            return v;
        }
        if (status == Tri::Unknown && (!closest || missing.size() < closest->size())) closest = missing;
    }
    if (closest) v.missing_data = *closest;
    return v;
}

ThreefoldVerdict classify_threefold(bool tensor_present, bool k_ample) {
    if (tensor_present && k_ample)
        return {ThreefoldCover::PolydiskH3, "semi-special tensor and ample K: quotient of the polydisk H^3"};
    std::string note = "needs both a semi-special tensor and ample K";
    note += "; in dimension >= 4 these conditions no longer force a polydisk cover";
    return {ThreefoldCover::NoRuleApplies, note};
}

}  // namespace polycurve
