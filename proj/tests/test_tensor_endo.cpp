#include "test_support.hpp"

#include "polycurve/tensor_endo.hpp"

#include <algorithm>
#include <numeric>

using namespace polycurve;
using testing_support::random_poly;

namespace {

using QPoly = MultiPoly<Rational>;
using GPoly = MultiPoly<GaussRational>;
const std::vector<std::string> xy{"x", "y"};

QPoly q(const std::string& s) { return parse_poly<Rational>(s, xy); }
GPoly g(const std::string& s) { return parse_poly<GaussRational>(s, xy); }

SpecialTensor2<Rational> tensor(const std::string& a11, const std::string& a12, const std::string& a22) {
    return {q(a11), q(a12), q(a22), {}};
}

// Signature by counting inversions.
int inversion_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("to_endomorphism entries") {
    auto m = to_endomorphism(tensor("0", "1", "0"));
    CHECK(m.m11 == q("-1"));
    CHECK(m.m12.is_zero());
    CHECK(m.m21.is_zero());
    CHECK(m.m22 == q("1"));

    m = to_endomorphism(tensor("1", "0", "1"));
    CHECK(m.m11.is_zero());
    CHECK(m.m12 == q("-1"));
    CHECK(m.m21 == q("1"));

    m = to_endomorphism(tensor("x", "0", "y"));
    CHECK(m.m12 == q("-y"));
    CHECK(m.m21 == q("x"));
    CHECK(m.trace().is_zero());
}

TEST_CASE("determinant_class") {
    auto d = determinant_class(tensor("0", "1", "0"));
    CHECK(d.det == q("-1"));
    CHECK(d.constant);
    d = determinant_class(tensor("1", "0", "1"));
    CHECK(d.det == q("1"));
    CHECK(d.constant);
    // a11 = c, a12 = -a, a22 = -b with a = xy, b = -x^2, c = y^2: a^2 = -bc.
    d = determinant_class(tensor("y^2", "-x*y", "x^2"));
    CHECK(d.det.is_zero());
    CHECK(d.constant);
    d = determinant_class(tensor("x", "0", "y"));
    CHECK(d.det == q("x*y"));
    CHECK_FALSE(d.constant);
}

TEST_CASE("eigen_split examples") {
    auto e = eigen_split(to_endomorphism(tensor("0", "1", "0")));
    CHECK(e[0].eigenvalue == 1);
    CHECK(e[0].v[0].is_zero());
    CHECK(e[0].v[1] == q("1"));
    CHECK(e[1].eigenvalue == -1);
    CHECK(e[1].v[0] == q("1"));
    CHECK(e[1].v[1].is_zero());

    const SpecialTensor2<GaussRational> rot{g("1"), g("0"), g("1"), {}};
    auto ge = eigen_split(to_endomorphism(rot));
    CHECK(ge[0].eigenvalue == imaginary_unit());
    CHECK(ge[0].v[0] == g("1"));
    CHECK(ge[0].v[1] == g("-i"));
    CHECK(ge[1].eigenvalue == -imaginary_unit());
    CHECK(ge[1].v[1] == g("i"));

    CHECK_THROWS_AS(eigen_split(to_endomorphism(tensor("x", "0", "y"))), DomainError);
    CHECK_THROWS_AS(eigen_split(to_endomorphism(tensor("y^2", "-x*y", "x^2"))), DomainError);
    // Eigenvalues +-i are not rational.
    CHECK_THROWS_AS(eigen_split(to_endomorphism(tensor("1", "0", "1"))), DomainError);
}

TEST_CASE("eigen_split directions are eigenvectors") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> lam(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
        // M = P diag(l, -l) P^-1 with P = [[1, f], [0, 1]] [[1, 0], [h, 1]], det P = 1.
        const QPoly f = random_poly(rng, xy, 2, 3), h = random_poly(rng, xy, 2, 3);
        const QPoly one = q("1"), zero(xy);
        const EndoMatrix<Rational> p{one + f * h, f, h, one};
        const EndoMatrix<Rational> pinv{one, -f, -h, one + f * h};
        const Rational l = lam(rng);
        const EndoMatrix<Rational> d{QPoly::constant(xy, l), zero, zero, QPoly::constant(xy, -l)};
        const auto m = p * d * pinv;
        REQUIRE(m.trace().is_zero());
        const auto e = eigen_split(m);
        CHECK(e[0].eigenvalue + e[1].eigenvalue == 0);
        for (const auto& [ev, v] : e) {
            CHECK(m.m11 * v[0] + m.m12 * v[1] == v[0].scaled(ev));
            CHECK(m.m21 * v[0] + m.m22 * v[1] == v[1].scaled(ev));
            const auto& lead = v[0].is_zero() ? v[1] : v[0];
            CHECK(lead.leading_coefficient() == 1);
        }
    }
}

TEST_CASE("nilpotent_decompose examples") {
    auto n = nilpotent_decompose(q("x*y"), q("-x^2"), q("y^2"));
    CHECK(n.delta == q("1"));
    CHECK(n.beta == q("x"));
    CHECK(n.gamma == q("y"));
    CHECK(n.z_length == 1);

    n = nilpotent_decompose(q("x^2*y"), q("-x^3"), q("x*y^2"));
    CHECK(n.delta == q("x"));
    CHECK(n.beta == q("x"));
    CHECK(n.gamma == q("y"));
    CHECK(n.z_length == 1);

    // delta = gcd(0, -x^2, 0) = x^2 leaves beta a unit and gamma zero.
    n = nilpotent_decompose(q("0"), q("-x^2"), q("0"));
    CHECK(n.delta == q("x^2"));
    CHECK(n.beta == q("1"));
    CHECK(n.gamma.is_zero());
    CHECK_FALSE(n.z_length.has_value());

    // A scalar unit that is not a square ends up in delta.
    n = nilpotent_decompose(q("2*x*y"), q("-2*x^2"), q("2*y^2"));
    CHECK(n.delta == q("2"));
    CHECK(n.beta == q("x"));

    CHECK_THROWS_AS(nilpotent_decompose(q("x"), q("1"), q("1")), DomainError);
    CHECK_THROWS_AS(nilpotent_decompose(q("0"), q("0"), q("0")), DomainError);
}

TEST_CASE("intersection length against hand-computed quotients") {
    // Transversal grid: deg(beta) * deg(gamma) reduced points.
    CHECK(intersection_length(q("(x - 1)*(x + 2)"), q("y*(y - 3)*(y + 1)")) == 6);
    // k[x,y]/(x^2, y^3) has basis x^i y^j, i < 2, j < 3.
    CHECK(intersection_length(q("x^2"), q("y^3")) == 6);
    // y = x^2 tangent to y = 0: k[x]/(x^2).
    CHECK(intersection_length(q("y - x^2"), q("y")) == 2);
    // Parallel lines never meet in the affine plane.
    CHECK(intersection_length(q("x"), q("x + 1")) == 0);
    // beta = y has no x term at all; a shear is needed.
    CHECK(intersection_length(q("y"), q("x^2 - y")) == 2);
    CHECK_FALSE(intersection_length(q("x"), q("x*y")).has_value());
    CHECK_FALSE(intersection_length(q("1"), q("y")).has_value());
}

TEST_CASE("intersection length is invariant under affine changes of coordinates") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-3, 3);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const QPoly b = random_poly(rng, xy, 2, 3), h = random_poly(rng, xy, 2, 3);
        const auto base = intersection_length(b, h);
        if (!base) continue;
        int m00 = c(rng), m01 = c(rng), m10 = c(rng), m11 = c(rng);
        if (m00 * m11 - m01 * m10 == 0) m00 = m11 = 1, m01 = m10 = 0;
        const std::map<std::string, QPoly> sub{
            {"x", q("x").scaled(m00) + q("y").scaled(m01) + QPoly::constant(xy, c(rng))},
            {"y", q("x").scaled(m10) + q("y").scaled(m11) + QPoly::constant(xy, c(rng))}};
        CHECK(intersection_length(substitute(b, sub, xy), substitute(h, sub, xy)) == base);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("tensor algebra identities on random instances") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dd(0, 2);
    for (int trial = 0; trial < 500; ++trial) {
        QPoly delta = random_poly(rng, xy, dd(rng), 3);
        if (delta.is_zero()) delta = q("1");
        const int room = std::max(0, (4 - delta.total_degree()) / 2);
        QPoly beta = random_poly(rng, xy, room, 3), gamma = random_poly(rng, xy, room, 3);
        if (beta.is_zero() && gamma.is_zero()) beta = q("x");
        const QPoly a = delta * beta * gamma, b = -(delta * beta * beta), c = delta * gamma * gamma;
        REQUIRE(std::max({a.total_degree(), b.total_degree(), c.total_degree()}) <= 4);

        const SpecialTensor2<Rational> t{c, -a, -b, {}};
        CHECK(to_endomorphism(t).trace().is_zero());

        const auto n = nilpotent_decompose(a, b, c);
        CHECK(n.delta * n.beta * n.gamma == a);
        CHECK(-(n.delta * n.beta * n.beta) == b);
        CHECK(n.delta * n.gamma * n.gamma == c);
        CHECK(gcd(n.beta, n.gamma).is_constant());
        const EndoMatrix<Rational> m{n.delta * n.beta * n.gamma, -(n.delta * n.beta * n.beta),
                                     n.delta * n.gamma * n.gamma, -(n.delta * n.beta * n.gamma)};
        const auto sq = m * m;
        CHECK((sq.m11.is_zero() && sq.m12.is_zero() && sq.m21.is_zero() && sq.m22.is_zero()));
    }
}

TEST_CASE("blowup_pullback examples") {
    auto r = blowup_pullback(tensor("1", "1/2", "1"));
    CHECK_FALSE(r.regular);

    // a = x, b = y, c = x + y: (x + u^3 x + (x + u x) u) / x.
    r = blowup_pullback(tensor("x", "1/2*x + 1/2*y", "y"));
    REQUIRE(r.regular);
    const std::vector<std::string> xu{"x", "u"};
    CHECK(*r.dx2 == parse_poly<Rational>("u^3 + u^2 + u + 1", xu));
    CHECK(r.du2 == parse_poly<Rational>("x^2*u", xu));

    r = blowup_pullback(tensor("x^2", "0", "0"));
    CHECK(r.regular);

    // Basepoint (1, 0): x - 1 vanishes there.
    SpecialTensor2<Rational> off = tensor("x - 1", "0", "y");
    off.base = {Rational(1), Rational(0)};
    CHECK(blowup_pullback(off).regular);
}

TEST_CASE("blowup regularity iff all coefficients vanish at the point") {
    std::mt19937 rng(99);
    std::bernoulli_distribution drop(0.5);
    for (int trial = 0; trial < 500; ++trial) {
        std::array<QPoly, 3> co;
        for (auto& p : co) {
            p = random_poly(rng, xy, 3, 3);
            if (drop(rng)) p -= QPoly::constant(xy, p.constant_term());
        }
        if (co[0].is_zero() && co[1].is_zero() && co[2].is_zero()) co[0] = q("x");
        const bool vanish = std::all_of(co.begin(), co.end(), [](const QPoly& p) { return sgn(p.constant_term()) == 0; });
        CHECK(blowup_pullback(SpecialTensor2<Rational>{co[0], co[1], co[2], {}}).regular == vanish);
    }
}

TEST_CASE("product_tensor_sign examples") {
    CHECK(product_tensor_sign(2, {0, 1}, {Mobius::affine(2, 0), Mobius::affine(1, 1)}) == 1);
    CHECK(product_tensor_sign(2, {1, 0}, {Mobius{}, Mobius{}}) == -1);
    CHECK(product_tensor_sign(3, {1, 2, 0}, {Mobius{}, Mobius{}, Mobius{}}) == 1);
    CHECK_THROWS_AS(product_tensor_sign(2, {0, 1}, {Mobius{1, 2, 2, 4}, Mobius{}}), DomainError);
    CHECK_THROWS_AS(product_tensor_sign(4, {0, 1, 2, 3}, {}), DomainError);
    CHECK_THROWS_AS(product_tensor_sign(2, {0, 0}, {Mobius{}, Mobius{}}), std::invalid_argument);
}

TEST_CASE("product_tensor_sign is the signature for any factor maps") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> c(-4, 4);
    for (int n = 2; n <= 3; ++n) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        do {
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<Mobius> maps;
                while (static_cast<int>(maps.size()) < n) {
                    Mobius f{c(rng), c(rng), c(rng), c(rng)};
                    if (sgn(f.det()) != 0) maps.push_back(f);
                }
                CHECK(product_tensor_sign(n, perm, maps) == inversion_sign(perm));
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}
