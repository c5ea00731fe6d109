#include "test_support.hpp"

#include "polycurve/errors.hpp"
#include "polycurve/ruled_cohomology.hpp"

#include "oracles.hpp"

using namespace polycurve;
using oracles::cox_monomials;
using oracles::torus_plus_roots;

TEST_CASE("h0_line_bundle examples") {
    CHECK(h0_line_bundle({3, 2, 1}) == 2);
    CHECK(h0_line_bundle({2, 2, 0}) == 1);
    CHECK(h0_line_bundle({0, 2, 3}) == 12);
    for (int k = 0; k < 6; ++k) CHECK(h0_line_bundle({1, 0, k}) == k + 1);
    CHECK(h0_line_bundle({2, -1, 5}) == 0);
    CHECK(h0_line_bundle({0, 3, -1}) == 0);
    CHECK_THROWS_AS(h0_line_bundle({-1, 0, 0}), DomainError);
}

TEST_CASE("lattice formula matches the Cox monomial count") {
    for (int n = 0; n <= 8; ++n)
        for (int a = 0; a <= 8; ++a)
            for (int b = 0; b <= 8; ++b) {
                CAPTURE(n);
                CAPTURE(a);
                CAPTURE(b);
                CHECK(h0_line_bundle({n, a, b}) == cox_monomials(n, a, b));
            }
}

TEST_CASE("quadric and monotonicity properties") {
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b) CHECK(h0_line_bundle({0, a, b}) == (a + 1) * (b + 1));
    for (int n = 0; n <= 6; ++n)
        for (int a = 0; a <= 6; ++a)
            for (int b = -3; b < 10; ++b) CHECK(h0_line_bundle({n, a, b}) <= h0_line_bundle({n, a, b + 1}));
}

TEST_CASE("special tensor space dimension") {
    CHECK(special_tensor_space_dim(2) == 1);
    CHECK(special_tensor_space_dim(5) == 4);
    CHECK(special_tensor_space_dim(0) == 0);
    for (int n = 0; n <= 50; ++n) CHECK(special_tensor_space_dim(n) == std::max(0, n - 1));
    // The intermediate step drops the Sigma coefficient without changing the count.
    for (int n = 2; n <= 20; ++n) {
        CHECK(h0_line_bundle({n, 2, n - 2}) == h0_line_bundle({n, 1, n - 2}));
        CHECK(h0_line_bundle({n, 1, n - 2}) == h0_line_bundle({n, 0, n - 2}));
    }
}

TEST_CASE("tangent sections") {
    CHECK(h0_tangent(0).h0 == 6);
    CHECK(h0_tangent(2).h0 == 7);
    CHECK(h0_tangent(4).h0 == 9);
    CHECK(h0_tangent(1).non_minimal);
    CHECK_FALSE(h0_tangent(2).non_minimal);
    for (int n = 0; n <= 30; ++n) CHECK(h0_tangent(n).h0 == torus_plus_roots(n));
}

TEST_CASE("rational verdicts") {
    CHECK(rational_verdict(0).kind == RationalVerdictKind::Quadric);
    CHECK(rational_verdict(2).kind == RationalVerdictKind::F2);
    CHECK(rational_verdict(2).tensor_space_dim == 1);
    CHECK(rational_verdict(1).kind == RationalVerdictKind::F1Excluded);
    const auto v = rational_verdict(7);
    CHECK(v.kind == RationalVerdictKind::FnNonUnique);
    CHECK(v.tensor_space_dim == 6);
}
