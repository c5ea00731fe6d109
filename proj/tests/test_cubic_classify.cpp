#include "test_support.hpp"

#include "polycurve/cubic_classify.hpp"
#include "polycurve/poly_algorithms.hpp"

#include "oracles.hpp"

using namespace polycurve;
using oracles::jacobian_length;

namespace {

using QPoly = MultiPoly<Rational>;
using GPoly = MultiPoly<GaussRational>;
const std::vector<std::string> xs{"x0", "x1", "x2"};

QPoly q(const std::string& s) { return parse_poly<Rational>(s, xs); }
GPoly g(const std::string& s) { return parse_poly<GaussRational>(s, xs); }

// tau of the singular scheme for each reduced class (tacnode counts 3).
int expected_length(const CubicClass<Rational>& c) {
    switch (c.kind) {
        case CubicKind::SmoothIrreducible: return 0;
        case CubicKind::IrreducibleNodal: return 1;
        case CubicKind::IrreducibleCuspidal: return 2;
        case CubicKind::LinePlusConic: return c.line_conic_intersections == 2 ? 2 : 3;
        case CubicKind::ThreeGeneralLines: return 3;
        case CubicKind::ThreeConcurrentLines: return 4;
        default: return -1;
    }
}

struct Canonical {
    const char* text;
    CubicKind kind;
};

const Canonical canonical[] = {
    {"x0^3 + x1^3 + x2^3", CubicKind::SmoothIrreducible},
    {"x2^2*x0 - x1^2*(x0 + x1)", CubicKind::IrreducibleNodal},
    {"x2^2*x0 - x1^3", CubicKind::IrreducibleCuspidal},
    {"x0*(x0^2 + x1^2 - x2^2)", CubicKind::LinePlusConic},
    {"x0*x1*x2", CubicKind::ThreeGeneralLines},
    {"x0*x1*(x0 + x1)", CubicKind::ThreeConcurrentLines},
    {"x0^2*x1", CubicKind::DoubleLinePlusLine},
    {"x0^3", CubicKind::TripleLine},
};

}  // namespace

TEST_CASE("singular_points examples") {
    auto s = singular_points(q("x0^3 + x1^3 + x2^3"));
    CHECK(s.count == 0);
    CHECK(s.points.empty());
    CHECK_FALSE(s.one_dimensional);

    s = singular_points(q("x2^2*x0 - x1^3"));
    REQUIRE(s.points.size() == 1);
    CHECK(s.points[0].coords == std::array<Rational, 3>{1, 0, 0});
    CHECK(s.points[0].type == PointType::Cusp);

    CHECK(singular_points(q("x0^2*x1")).one_dimensional);
}

TEST_CASE("classify examples") {
    auto c = classify(q("x0*x1*x2"));
    CHECK(c.kind == CubicKind::ThreeGeneralLines);
    REQUIRE(c.locus.points.size() == 3);
    for (const auto& p : c.locus.points) CHECK(p.type == PointType::Node);

    c = classify(q("x0*x1*(x0 + x1)"));
    CHECK(c.kind == CubicKind::ThreeConcurrentLines);
    REQUIRE(c.locus.points.size() == 1);
    CHECK(c.locus.points[0].coords == std::array<Rational, 3>{0, 0, 1});
    CHECK(c.locus.points[0].type == PointType::HigherMultiplicity);

    // Over Q the two points (0:1:+-i) are only certified, not listed.
    c = classify(q("x0*(x0^2 + x1^2 + x2^2)"));
    CHECK(c.kind == CubicKind::LinePlusConic);
    CHECK(c.line_conic_intersections == 2);
    CHECK(c.locus.count == 2);
    CHECK(c.locus.points.empty());
    CHECK_FALSE(c.locus.residual.empty());

    auto gc = classify(g("x0*(x0^2 + x1^2 + x2^2)"));
    CHECK(gc.kind == CubicKind::LinePlusConic);
    REQUIRE(gc.locus.points.size() == 2);
    for (const auto& p : gc.locus.points) {
        CHECK(p.coords[0] == GaussRational());
        CHECK(p.coords[1] == GaussRational(1));
        CHECK(p.coords[2].norm() == 1);
        CHECK_FALSE(p.coords[2].is_real());
    }

    c = classify(q("x2^2*x0 - x1^2*(x0 + x1)"));
    CHECK(c.kind == CubicKind::IrreducibleNodal);
    REQUIRE(c.locus.points.size() == 1);
    CHECK(c.locus.points[0].coords == std::array<Rational, 3>{1, 0, 0});

    CHECK(classify(q("x0^3")).kind == CubicKind::TripleLine);

    // Line tangent to a conic.
    c = classify(q("x2*(x2*x0 - x1^2)"));
    CHECK(c.kind == CubicKind::LinePlusConic);
    CHECK(c.line_conic_intersections == 1);
    CHECK(c.locus.points[0].type == PointType::Cusp);

    CHECK_THROWS_AS(classify(q("x0^2 + x1")), DomainError);
    CHECK_THROWS_AS(classify(q("0")), DomainError);
}

TEST_CASE("holonomy verdicts") {
    CHECK(holonomy_verdict(CubicKind::SmoothIrreducible).kind == HolonomyKind::StabilizerFinite);
    CHECK(holonomy_verdict(CubicKind::IrreducibleCuspidal).kind == HolonomyKind::SplitsCompletely);
    CHECK(holonomy_verdict(CubicKind::TripleLine).kind == HolonomyKind::ExcludedByBogomolov);
    for (int k = 0; k <= static_cast<int>(CubicKind::TripleLine); ++k) {
        const auto kind = static_cast<CubicKind>(k);
        CHECK_FALSE(holonomy_verdict(kind).clause.empty());
        CHECK(parse_cubic_kind(to_string(kind)) == kind);
    }
}

TEST_CASE("classification agrees with the Jacobian length oracle") {
    for (const auto& c : canonical) {
        const auto f = q(c.text);
        const auto cls = classify(f);
        CHECK(cls.kind == c.kind);
        if (cls.locus.one_dimensional) continue;
        CHECK(jacobian_length(f) == expected_length(cls));
        CHECK(cls.locus.count <= 3);
        CHECK((cls.locus.count == 0) == (cls.kind == CubicKind::SmoothIrreducible));
    }
    const auto tac = q("x2*(x2*x0 - x1^2)");
    CHECK(jacobian_length(tac) == expected_length(classify(tac)));
}

TEST_CASE("canonical forms are invariant under random projectivities") {
    std::mt19937_64 rng(17);
    for (const auto& c : canonical) {
        CAPTURE(c.text);
        const auto f = q(c.text);
        for (int k = 0; k < 20; ++k) {
            const auto t = random_projectivity(rng);
            const auto ft = apply_linear(f, t);
            const auto cls = classify(ft);
            CHECK(cls.kind == c.kind);
            // Every listed point really is singular.
            for (const auto& p : cls.locus.points)
                for (const auto& d : partials(ft)) CHECK(sgn(d.evaluate(p.coords)) == 0);
            if (!cls.locus.one_dimensional) CHECK(jacobian_length(ft) == expected_length(cls));
        }
        CHECK(pgl_invariance_check(f, 20, 1));
    }
}

TEST_CASE("random cubics are mostly smooth and never misclassified against the oracle") {
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int trial = 0; trial < 60; ++trial) {
        QPoly f(xs);
        for (int a = 3; a >= 0; --a)
            for (int b = 3 - a; b >= 0; --b) f.add_term({a, b, 3 - a - b}, Rational(c(rng)));
        if (f.is_zero()) continue;
        const auto cls = classify(f);
        if (!cls.locus.one_dimensional) CHECK(jacobian_length(f) == expected_length(cls));
    }
}

TEST_CASE("Gaussian cubics") {
    // Three lines through (0:0:1) with non-real slopes.
    CHECK(classify(g("x0*(x0 - i*x1)*(x0 + i*x1)")).kind == CubicKind::ThreeConcurrentLines);
    CHECK(classify(g("(x0 + i*x2)^2*x1")).kind == CubicKind::DoubleLinePlusLine);
    CHECK(classify(g("x0^3 + i*x1^3 + x2^3")).kind == CubicKind::SmoothIrreducible);
    CHECK(classify(g("x0*x1*(x2 + i*x0 + x1)")).kind == CubicKind::ThreeGeneralLines);
    CHECK(pgl_invariance_check(g("x2^2*x0 - x1^2*(x0 + i*x1)"), 10, 4));
}

TEST_CASE("float mode reproduces the canonical classes") {
    std::mt19937_64 rng(23);
    int decided = 0;
    for (const auto& c : canonical) {
        CAPTURE(c.text);
        const auto f = parse_poly<Complex>(c.text, xs);
        const auto cls = classify_float(f, 1e-9);
        CHECK(cls.kind == c.kind);
        // An integer projectivity can be badly conditioned; float mode may then
        // decline with the ambiguity error, but it must never answer wrongly.
        for (int k = 0; k < 20; ++k) {
            try {
                const auto kind = classify_float(apply_linear(f, random_projectivity(rng)), 1e-9).kind;
                CHECK(kind == c.kind);
                ++decided;
            } catch (const DomainError& e) {
                CHECK(e.code() == "ambiguous_near_tolerance");
            }
        }
    }
    CHECK(decided >= 150);
    const auto tac = classify_float(parse_poly<Complex>("x2*(x2*x0 - x1^2)", xs), 1e-9);
    CHECK(tac.kind == CubicKind::LinePlusConic);
    CHECK(tac.line_conic_intersections == 1);
    CHECK(tac.jacobian_length == 3);
}

TEST_CASE("float mode singular points") {
    auto cls = classify_float(parse_poly<Complex>("x0*x1*x2", xs), 1e-9);
    REQUIRE(cls.points.size() == 3);
    int unit_vectors = 0;
    for (const auto& p : cls.points) {
        int ones = 0, zeros = 0;
        for (const auto& v : p.coords) {
            if (std::abs(v - 1.0) < 1e-9) ++ones;
            if (std::abs(v) < 1e-9) ++zeros;
        }
        if (ones == 1 && zeros == 2) ++unit_vectors;
    }
    CHECK(unit_vectors == 3);

    cls = classify_float(parse_poly<Complex>("x2^2*x0 - x1^3", xs), 1e-9);
    REQUIRE(cls.points.size() == 1);
    CHECK(std::abs(cls.points[0].coords[0] - 1.0) < 1e-6);
    CHECK(std::abs(cls.points[0].coords[1]) < 1e-4);
    CHECK(std::abs(cls.points[0].coords[2]) < 1e-4);
    CHECK(cls.points[0].type == PointType::Cusp);
}

TEST_CASE("float mode flags decisions near the tolerance") {
    // A cusp perturbed into a node by eps; the Macaulay singular value that
    // separates the two scales like eps^2.
    const auto perturbed = [](double eps) {
        auto f = parse_poly<Complex>("x2^2*x0 - x1^3", xs);
        f.add_term({1, 2, 0}, Complex(eps, 0));
        return f;
    };
    CHECK(classify_float(perturbed(1e-3), 1e-9).kind == CubicKind::IrreducibleNodal);
    CHECK(classify_float(perturbed(1e-13), 1e-9).kind == CubicKind::IrreducibleCuspidal);
    int flagged = 0;
    for (double eps : {2e-5, 4e-5, 6e-5, 8e-5, 1e-4, 1.4e-4, 2e-4}) {
        try {
            classify_float(perturbed(eps), 1e-9);
        } catch (const DomainError& e) {
            CHECK(e.code() == "ambiguous_near_tolerance");
            ++flagged;
        }
    }
    CHECK(flagged > 0);
}
