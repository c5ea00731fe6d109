#include "test_support.hpp"

#include "surface_fixtures.hpp"

#include <chrono>

using namespace polycurve;

namespace {

SurfaceInvariants rec() { return {}; }

bool has_code(const std::vector<Finding>& f, const std::string& code, Severity sev) {
    return std::any_of(f.begin(), f.end(), [&](const Finding& x) { return x.code == code && x.severity == sev; });
}

}  // namespace

TEST_CASE("frozen verdicts") {
    auto s = rec();
    s.P12 = 0, s.q = 1, s.K2 = 0, s.kaehler = true;
    auto v = classify_surface(s);
    CHECK(v.cover == Cover::P1xC);
    CHECK_FALSE(v.fired_rule.empty());

    s = rec();
    s.P12 = 0, s.q = 3, s.K2 = -16, s.kaehler = true;
    CHECK(classify_surface(s).cover == Cover::P1xH);

    s = rec();
    s.P12 = 1, s.q = 2, s.K2 = 0, s.kaehler = true;
    CHECK(classify_surface(s).cover == Cover::C2);

    s = rec();
    s.P12 = 5, s.e = 0, s.kaehler = true;
    CHECK(classify_surface(s).cover == Cover::CxH);

    s = rec();
    s.tensor_status = TensorStatus::SemiSpecialUniqueType, s.K2 = 8, s.chi = 1, s.P2 = 3;
    CHECK(classify_surface(s).cover == Cover::HxH);

    s = rec();
    s.tensor_status = TensorStatus::SpecialUnique, s.K2 = 8, s.P2 = 0, s.h0_omega_mk = 6;
    CHECK(classify_surface(s).cover == Cover::P1xP1);

    s = rec();
    s.K2 = 9, s.chi = 1, s.P2 = 2;
    CHECK(classify_surface(s).cover == Cover::Ball);

    s = rec();
    s.q = 0, s.p_g = 1, s.chi = 3;
    v = classify_surface(s);
    CHECK(v.cover == Cover::Inconsistent);
    CHECK(has_code(v.findings, "chi_identity", Severity::Contradiction));

    s = rec();
    s.P12 = 0, s.q = 1;
    v = classify_surface(s);
    CHECK(v.cover == Cover::NoRuleApplies);
    CHECK(v.missing_data == std::vector<std::string>{"K2"});
    CHECK(v.fired_rule.empty());
}

TEST_CASE("kaehler flag and screens") {
    auto s = rec();
    s.P12 = 0, s.q = 1, s.K2 = 0, s.kaehler = false;
    CHECK(classify_surface(s).cover == Cover::NoRuleApplies);
    s.kaehler.reset();
    CHECK(classify_surface(s).cover == Cover::P1xC);

    s = rec();
    s.P2 = -1;
    CHECK(classify_surface(s).cover == Cover::Inconsistent);

    s = rec();
    s.K2 = 9, s.chi = 1, s.e = 5;  // 12 != 14
    CHECK(classify_surface(s).cover == Cover::Inconsistent);
    s.chi.reset();  // 14 is not a multiple of 12
    CHECK(classify_surface(s).cover == Cover::Inconsistent);

    // A fired rule whose necessary conditions fail becomes Inconsistent.
    s = rec();
    s.tensor_status = TensorStatus::SemiSpecialUniqueType, s.K2 = 8, s.chi = 2, s.P2 = 3;
    CHECK(classify_surface(s).cover == Cover::Inconsistent);
}

TEST_CASE("completion from identities") {
    auto s = rec();
    s.chi = 2, s.K2 = 8;
    const auto c = complete(s);
    CHECK(c.e == 16);
    s = rec();
    s.q = 1, s.p_g = 3;
    CHECK(complete(s).chi == 3);
}

TEST_CASE("consistency report") {
    auto s = rec();
    s.K2 = 8, s.chi = 2;
    const auto f = consistency_report(s, Cover::HxH);
    CHECK(has_code(f, "k2_eq_8chi", Severity::Contradiction));

    s = rec();
    s.K2 = 18, s.chi = 2;
    const auto g = consistency_report(s, Cover::Ball);
    CHECK(std::none_of(g.begin(), g.end(), [](const Finding& x) { return x.severity == Severity::Contradiction; }));

    CHECK(consistency_report(rec()).empty());

    s = rec();
    s.q = 0, s.tensor_status = TensorStatus::SemiSpecialUniqueType, s.P2 = 2;
    CHECK(has_code(consistency_report(s), "open_question", Severity::Info));

    s = rec();
    s.tensor_status = TensorStatus::SpecialUnique, s.K2 = 8, s.chi = 1, s.P2 = 1;
    CHECK(has_code(consistency_report(s, Cover::HxH), "p2_at_least_2", Severity::Info));
}

TEST_CASE("threefolds") {
    CHECK(classify_threefold(true, true).cover == ThreefoldCover::PolydiskH3);
    CHECK(classify_threefold(true, false).cover == ThreefoldCover::NoRuleApplies);
    CHECK(classify_threefold(false, true).cover == ThreefoldCover::NoRuleApplies);
}

TEST_CASE("erasure monotonicity") {
    std::mt19937_64 rng(99);
    const auto start = std::chrono::steady_clock::now();
    int concrete_after_erasure = 0;
    for (int i = 0; i < 20000; ++i) {
        const auto [full, truth] = surface_fixtures::random_consistent(rng);
        const auto vf = classify_surface(full);
        REQUIRE(vf.cover == truth);
        CHECK(std::none_of(vf.findings.begin(), vf.findings.end(),
                           [](const Finding& x) { return x.severity == Severity::Contradiction; }));
        const auto partial = surface_fixtures::erase(rng, full, 0.3);
        const auto sparse = surface_fixtures::erase(rng, partial, 0.3);
        const auto vp = classify_surface(partial), vs = classify_surface(sparse);
        CHECK(surface_fixtures::compatible(vp.cover, vf.cover));
        CHECK(surface_fixtures::compatible(vs.cover, vp.cover));
        concrete_after_erasure += vs.cover != Cover::NoRuleApplies;
        // Determinism.
        CHECK(classify_surface(sparse).cover == vs.cover);
    }
    CHECK(concrete_after_erasure > 1000);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(10));
}
