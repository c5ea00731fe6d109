#pragma once

// Local models of symmetric special tensors on a surface: the trace-free
// endomorphism they define, its eigen-splitting or nilpotent factorization,
// pullback under a point blow-up, and the sign character of the product tensor
// dz1...dzn / (dz1^...^dzn).

#include "polycurve/errors.hpp"
#include "polycurve/poly_algorithms.hpp"
#include "polycurve/poly_text.hpp"

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polycurve {

/// a11 dx^2 + 2 a12 dx dy + a22 dy^2, divided by dx^dy.
template <ExactScalar S>
struct SpecialTensor2 {
    MultiPoly<S> a11, a12, a22;
    std::array<S, 2> base{};  // basepoint, default origin

    void validate() const {
        if (a11.vars() != a12.vars() || a12.vars() != a22.vars())
            throw std::invalid_argument("tensor coefficients over different variable lists");
        if (a11.is_zero() && a12.is_zero() && a22.is_zero())
            throw DomainError("zero_tensor", "special tensor must be nonzero");
    }
};

template <PolyScalar S>
struct EndoMatrix {
    MultiPoly<S> m11, m12, m21, m22;

    MultiPoly<S> trace() const { return m11 + m22; }
    MultiPoly<S> det() const { return m11 * m22 - m12 * m21; }

    friend EndoMatrix operator*(const EndoMatrix& p, const EndoMatrix& q) {
        return {p.m11 * q.m11 + p.m12 * q.m21, p.m11 * q.m12 + p.m12 * q.m22,
                p.m21 * q.m11 + p.m22 * q.m21, p.m21 * q.m12 + p.m22 * q.m22};
    }
};

template <ExactScalar S>
EndoMatrix<S> to_endomorphism(const SpecialTensor2<S>& t) {
    return {-t.a12, -t.a22, t.a11, t.a12};
}

template <ExactScalar S>
struct DeterminantClass {
    MultiPoly<S> det;
    bool constant;
};

/// Determinant of the endomorphism, a11*a22 - a12^2.
template <ExactScalar S>
DeterminantClass<S> determinant_class(const SpecialTensor2<S>& t) {
    MultiPoly<S> d = to_endomorphism(t).det();
    const bool c = d.is_constant();
    return {std::move(d), c};
}

template <ExactScalar S>
struct Eigendirection {
    S eigenvalue;
    std::array<MultiPoly<S>, 2> v;
};

namespace detail {

// Divide out the common factor, then make the first nonzero entry monic.
template <ExactScalar S>
std::array<MultiPoly<S>, 2> normalize_direction(std::array<MultiPoly<S>, 2> v) {
    const MultiPoly<S> g = gcd(v[0], v[1]);
    for (auto& e : v) e = divide_or_throw(e, g);
    const MultiPoly<S>& lead = v[0].is_zero() ? v[1] : v[0];
    const S s = ScalarTraits<S>::one() / lead.leading_coefficient();
    for (auto& e : v) e = e.scaled(s);
    return v;
}

}  // namespace detail

/// Eigendirections for +c and -c, c the principal root of -det (so c^2 = -det,
/// the eigenvalues of a trace-free 2x2 matrix).
template <ExactScalar S>
std::array<Eigendirection<S>, 2> eigen_split(const EndoMatrix<S>& m) {
    using T = ScalarTraits<S>;
    if (!(m.trace().is_zero())) throw std::invalid_argument("endomorphism is not trace-free");
    const MultiPoly<S> d = m.det();
    if (!d.is_constant()) throw DomainError("nonconstant_determinant", "determinant " + to_string(d) + " is not constant");
    if (d.is_zero()) throw DomainError("zero_determinant", "determinant is zero; use the nilpotent decomposition");
    const auto c = T::sqrt(-d.constant_term());
    if (!c) throw DomainError("eigenvalue_not_in_field", "eigenvalues +-sqrt(" + to_string(-d.constant_term()) +
                                                            ") are not in the coefficient field; try Gaussian mode");
    const auto& vars = m.m11.vars();
    std::array<Eigendirection<S>, 2> out;
    const std::array<S, 2> lambdas{*c, -*c};
    for (std::size_t k = 0; k < 2; ++k) {
        const auto lam = MultiPoly<S>::constant(vars, lambdas[k]);
        std::array<MultiPoly<S>, 2> v{m.m12, lam - m.m11};
        if (v[0].is_zero() && v[1].is_zero()) v = {lam - m.m22, m.m21};
        out[k] = {lambdas[k], detail::normalize_direction(v)};
    }
    return out;
}

template <ExactScalar S>
struct NilpotentDecomposition {
    MultiPoly<S> delta, beta, gamma;
    std::optional<long> z_length;  // empty: not computed
};

/// dim k[x,y]/(beta, gamma) for coprime nonconstant beta, gamma in two variables.
///
/// After a shear y -> y + t x making beta's top x-power coefficient constant,
/// k[x,y]/(beta) is free over k[y] and the y-degree of Res_x is the length.
template <ExactScalar S>
std::optional<long> intersection_length(const MultiPoly<S>& beta, const MultiPoly<S>& gamma) {
    using T = ScalarTraits<S>;
    if (beta.nvars() != 2 || gamma.vars() != beta.vars()) return std::nullopt;
    if (beta.is_constant() || gamma.is_constant()) return std::nullopt;
    if (!gcd(beta, gamma).is_constant()) return std::nullopt;
    const auto& vars = beta.vars();
    const int d = beta.total_degree();
    const auto x = MultiPoly<S>::variable(vars, vars[0]);
    const auto y = MultiPoly<S>::variable(vars, vars[1]);
    for (long t = 0; t <= d + 1; ++t) {
        for (long dir : {1L, -1L}) {
            if (t == 0 && dir < 0) continue;
            const std::map<std::string, MultiPoly<S>> shear{{vars[1], y + x.scaled(S(dir * t))}};
            const auto b = substitute(beta, shear, vars);
            if (T::is_zero(b.coefficient(0, d).constant_term())) continue;
            const auto g = substitute(gamma, shear, vars);
            return resultant(b, g, vars[0]).degree(1);
        }
    }
    // The top form of beta has at most d roots on the line, so some shear works.
    throw std::logic_error("no admissible shear found");
}

/// Factor a nilpotent trace-free endomorphism [[a, b], [c, -a]] (a^2 = -bc) as
/// a = delta*beta*gamma, b = -delta*beta^2, c = delta*gamma^2, with beta monic.
template <ExactScalar S>
NilpotentDecomposition<S> nilpotent_decompose(const MultiPoly<S>& a, const MultiPoly<S>& b, const MultiPoly<S>& c) {
    if (a.vars() != b.vars() || b.vars() != c.vars())
        throw std::invalid_argument("coefficients over different variable lists");
    if (a.is_zero() && b.is_zero() && c.is_zero()) throw DomainError("zero_tensor", "a, b, c are all zero");
    if (!(a * a + b * c).is_zero()) throw DomainError("not_nilpotent", "a^2 != -b*c");

    const auto& vars = a.vars();
    const MultiPoly<S> g = gcd(gcd(a, b), c);
    NilpotentDecomposition<S> out;
    if (b.is_zero()) {
        // Then a = 0 too; everything sits in delta.
        out.beta = MultiPoly<S>(vars);
        auto root = sqrt_up_to_unit(divide_or_throw(c, g));
        if (!root) throw DomainError("not_a_square", "c/delta is not a square up to a unit");
        out.delta = g.scaled(root->first);
        out.gamma = root->second;
    } else {
        auto root = sqrt_up_to_unit(divide_or_throw(-b, g));
        if (!root) throw DomainError("not_a_square", "-b/delta is not a square up to a unit");
        // -b/g = u * beta^2; the unit goes into delta so that b = -delta*beta^2.
        out.delta = g.scaled(root->first);
        out.beta = root->second;
        auto gm = divide_exact(a, out.delta * out.beta);
        if (!gm) throw DomainError("not_a_square", "a is not divisible by delta*beta");
        out.gamma = *gm;
        if (!(out.delta * out.gamma * out.gamma == c))
            throw DomainError("not_a_square", "c != delta*gamma^2");
    }
    out.z_length = intersection_length(out.beta, out.gamma);
    return out;
}

template <ExactScalar S>
struct BlowupPullback {
    MultiPoly<S> dx2_numerator;            // (a + b u^2 + c u)(x, u x)
    std::optional<MultiPoly<S>> dx2;       // numerator / x, when regular
    MultiPoly<S> dxdu;                     // 2 b u + c
    MultiPoly<S> du2;                      // b x
    bool regular;
};

/// Pullback of a dx^2 + b dy^2 + c dx dy over dx^dy to the chart y = u x of
/// the blow-up at the basepoint. Here a = a11, b = a22, c = 2 a12.
/// The tensor's variables must be exactly (x, y); the chart uses (x, u).
template <ExactScalar S>
BlowupPullback<S> blowup_pullback(const SpecialTensor2<S>& t) {
    t.validate();
    const auto& vars = t.a11.vars();
    if (vars.size() != 2) throw std::invalid_argument("blow-up needs a tensor in two variables");
    const std::vector<std::string> chart{vars[0], vars[1] == "u" ? "u_" : "u"};
    const auto x = MultiPoly<S>::variable(chart, chart[0]);
    const auto u = MultiPoly<S>::variable(chart, chart[1]);
    const auto shift = [&](const S& s) { return MultiPoly<S>::constant(chart, s); };
    // Recentre at the basepoint while substituting y = u x.
    const std::map<std::string, MultiPoly<S>> sub{{vars[0], x + shift(t.base[0])},
                                                  {vars[1], u * x + shift(t.base[1])}};
    const auto a = substitute(t.a11, sub, chart);
    const auto b = substitute(t.a22, sub, chart);
    const auto c = substitute(t.a12, sub, chart).scaled(S(2));

    BlowupPullback<S> out;
    out.dx2_numerator = a + b * u * u + c * u;
    out.dxdu = b * u.scaled(S(2)) + c;
    out.du2 = b * x;
    out.dx2 = divide_exact(out.dx2_numerator, x);
    out.regular = out.dx2.has_value();
    return out;
}

/// z -> (alpha z + beta) / (gamma z + delta).
struct Mobius {
    Rational alpha{1}, beta{0}, gamma{0}, delta{1};

    static Mobius affine(Rational a, Rational b) { return {std::move(a), std::move(b), Rational(0), Rational(1)}; }
    Rational det() const { return alpha * delta - beta * gamma; }
};

/// Scalar by which (dz1...dzn)/(dz1^...^dzn) changes under
/// F(z)_i = maps[i](z_{perm[i]}); equals the signature of perm.
Rational product_tensor_sign(int n, const std::vector<int>& perm, const std::vector<Mobius>& maps);

int permutation_sign(const std::vector<int>& perm);

}  // namespace polycurve
