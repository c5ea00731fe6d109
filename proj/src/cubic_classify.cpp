#include "polycurve/cubic_classify.hpp"

#include "polycurve/poly_algorithms.hpp"
#include "polycurve/poly_text.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>

namespace polycurve {

std::string to_string(CubicKind k) {
    switch (k) {
        case CubicKind::SmoothIrreducible: return "SmoothIrreducible";
        case CubicKind::IrreducibleNodal: return "IrreducibleNodal";
        case CubicKind::IrreducibleCuspidal: return "IrreducibleCuspidal";
        case CubicKind::LinePlusConic: return "LinePlusConic";
        case CubicKind::DoubleLinePlusLine: return "DoubleLinePlusLine";
        case CubicKind::ThreeConcurrentLines: return "ThreeConcurrentLines";
        case CubicKind::ThreeGeneralLines: return "ThreeGeneralLines";
        case CubicKind::TripleLine: return "TripleLine";
    }
    return "?";
}

std::optional<CubicKind> parse_cubic_kind(const std::string& s) {
    for (int k = 0; k <= static_cast<int>(CubicKind::TripleLine); ++k)
        if (to_string(static_cast<CubicKind>(k)) == s) return static_cast<CubicKind>(k);
    return std::nullopt;
}

std::string to_string(PointType t) {
    switch (t) {
        case PointType::Node: return "Node";
        case PointType::Cusp: return "Cusp";
        case PointType::HigherMultiplicity: return "HigherMultiplicity";
    }
    return "?";
}

std::string to_string(HolonomyKind k) {
    switch (k) {
        case HolonomyKind::StabilizerFinite: return "StabilizerFinite";
        case HolonomyKind::SplitsCompletely: return "SplitsCompletely";
        case HolonomyKind::ExcludedByBogomolov: return "ExcludedByBogomolov";
    }
    return "?";
}

HolonomyVerdict holonomy_verdict(CubicKind k) {
    switch (k) {
        case CubicKind::SmoothIrreducible:
            return {HolonomyKind::StabilizerFinite,
                    "the linear automorphisms of a smooth cubic form a finite group, contradicting a holonomy "
                    "group of dimension at least 3"};
        case CubicKind::TripleLine:
            return {HolonomyKind::ExcludedByBogomolov,
                    "3L = K + D with D effective would give h0(mL) growing quadratically, against Bogomolov's bound"};
        default:
            return {HolonomyKind::SplitsCompletely,
                    "the stabilizer preserves the singular configuration, so the holonomy reduces to U(1)^3 and the "
                    "universal cover is a product of three discs when K is ample"};
    }
}

IntMatrix3 random_projectivity(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> entry(-3, 3);
    for (;;) {
        IntMatrix3 t;
        for (auto& row : t)
            for (auto& e : row) e = entry(rng);
        const long det = t[0][0] * (t[1][1] * t[2][2] - t[1][2] * t[2][1]) -
                         t[0][1] * (t[1][0] * t[2][2] - t[1][2] * t[2][0]) +
                         t[0][2] * (t[1][0] * t[2][1] - t[1][1] * t[2][0]);
        if (det != 0) return t;
    }
}

namespace {

template <PolyScalar S>
using Matrix3 = std::array<std::array<S, 3>, 3>;

// F(M y), keeping F's variable names for y.
template <PolyScalar S>
MultiPoly<S> apply_matrix(const MultiPoly<S>& f, const Matrix3<S>& m) {
    const auto& vars = f.vars();
    std::map<std::string, MultiPoly<S>> sub;
    for (std::size_t i = 0; i < 3; ++i) {
        MultiPoly<S> img(vars);
        for (std::size_t j = 0; j < 3; ++j) img += MultiPoly<S>::variable(vars, vars[j]).scaled(m[i][j]);
        sub.emplace(vars[i], img);
    }
    return substitute(f, sub, vars);
}

template <ExactScalar S>
using Mat = std::vector<std::vector<S>>;

// Reduced row echelon form in place; returns the pivot columns.
template <ExactScalar S>
std::vector<std::size_t> rref(Mat<S>& m) {
    using T = ScalarTraits<S>;
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && T::is_zero(m[p][c])) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const S inv = T::one() / m[r][c];
        for (auto& v : m[r]) v *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || T::is_zero(m[i][c])) continue;
            const S f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Columns: coefficients of the three partials on the degree-2 monomials.
template <ExactScalar S>
Mat<S> partials_matrix(const MultiPoly<S>& f) {
    const auto d = partials(f);
    std::vector<Exponent> monos;
    for (int a = 2; a >= 0; --a)
        for (int b = 2 - a; b >= 0; --b) monos.push_back({a, b, 2 - a - b});
    Mat<S> m(monos.size(), std::vector<S>(3, ScalarTraits<S>::zero()));
    for (std::size_t j = 0; j < 3; ++j)
        for (const auto& [e, c] : d[j].terms()) {
            const auto it = std::find(monos.begin(), monos.end(), e);
            m[static_cast<std::size_t>(it - monos.begin())][j] = c;
        }
    return m;
}

template <ExactScalar S>
std::array<S, 3> normalized(std::array<S, 3> p) {
    for (const auto& v : p) {
        if (ScalarTraits<S>::is_zero(v)) continue;
        const S inv = ScalarTraits<S>::one() / v;
        for (auto& w : p) w *= inv;
        break;
    }
    return p;
}

// Coordinates moving p to (0:0:1): columns e_a, e_b, p.
template <ExactScalar S>
Matrix3<S> chart_at(const std::array<S, 3>& p) {
    std::size_t k = 0;
    while (ScalarTraits<S>::is_zero(p[k])) ++k;
    Matrix3<S> m{};
    std::size_t col = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        if (i == k) continue;
        m[i][col++] = ScalarTraits<S>::one();
    }
    for (std::size_t i = 0; i < 3; ++i) m[i][2] = p[i];
    return m;
}

// With p at (0:0:1), F = w q(u,v) + c(u,v) (no w^2 or w^3 term at a singular point).
template <ExactScalar S>
struct LocalForm {
    MultiPoly<S> q, c;
    S qa, qb, qc;  // q = qa u^2 + qb u v + qc v^2
};

template <ExactScalar S>
LocalForm<S> local_form(const MultiPoly<S>& f, const std::array<S, 3>& p) {
    const auto g = apply_matrix(f, chart_at(p));
    if (!g.coefficient(2, 2).is_zero() || !g.coefficient(2, 3).is_zero())
        throw std::logic_error("local analysis at a nonsingular point");
    LocalForm<S> lf{g.coefficient(2, 1), g.coefficient(2, 0), {}, {}, {}};
    const auto coef = [&](int a, int b) {
        auto it = lf.q.terms().find(Exponent{a, b, 0});
        return it == lf.q.terms().end() ? ScalarTraits<S>::zero() : it->second;
    };
    lf.qa = coef(2, 0);
    lf.qb = coef(1, 1);
    lf.qc = coef(0, 2);
    return lf;
}

template <ExactScalar S>
PointType point_type(const LocalForm<S>& lf) {
    if (lf.q.is_zero()) return PointType::HigherMultiplicity;
    const S disc = lf.qb * lf.qb - S(4) * lf.qa * lf.qc;
    return ScalarTraits<S>::is_zero(disc) ? PointType::Cusp : PointType::Node;
}

// For a double-line tangent cone q = lambda*l^2: does l divide the cubic part?
template <ExactScalar S>
bool tangent_line_is_component(const LocalForm<S>& lf) {
    const auto& vars = lf.q.vars();
    const auto u = MultiPoly<S>::variable(vars, vars[0]);
    const auto v = MultiPoly<S>::variable(vars, vars[1]);
    MultiPoly<S> l = ScalarTraits<S>::is_zero(lf.qa) ? v : u.scaled(S(2) * lf.qa) + v.scaled(lf.qb);
    return divide_exact(lf.c, l).has_value();
}

// Nearest integral (Z or Z[i]) value to z.
template <ExactScalar S>
S round_integral(Complex z) {
    const auto r = [](double x) { return Rational(mpz_class(std::nearbyint(x))); };
    if constexpr (ScalarTraits<S>::has_imaginary_unit) {
        return S(r(z.real()), r(z.imag()));
    } else {
        return S(r(z.real()));
    }
}

template <ExactScalar S>
mpz_class denominator_lcm(const UPoly<S>& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) {
        if constexpr (ScalarTraits<S>::has_imaginary_unit) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.real().get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.imag().get_den_mpz_t());
        } else {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    return l;
}

// Roots in the coefficient field of a squarefree polynomial. Whatever factor
// cannot be split is returned as the residual.
template <ExactScalar S>
std::vector<S> field_roots(UPoly<S> s, UPoly<S>& residual) {
    using T = ScalarTraits<S>;
    std::vector<S> roots;
    const auto deflate = [&](const S& r) {
        roots.push_back(r);
        s = s.divmod(UPoly<S>(std::vector<S>{-r, T::one()})).first;
    };
    while (s.degree() >= 1) {
        s = s.monic();
        if (s.degree() == 1) {
            deflate(-s.coeff(0));
            continue;
        }
        if (s.degree() == 2) {
            const S b = s.coeff(1), c = s.coeff(0);
            const auto sq = T::sqrt(b * b - S(4) * c);
            if (!sq) break;
            const S r1 = (-b + *sq) / S(2), r2 = (-b - *sq) / S(2);
            deflate(r1);
            deflate(r2);
            continue;
        }
        // Numerical roots; a root p/q in the field has q | a_n once the
        // coefficients are integral, so a_n * root rounds to an integer.
        const auto n = static_cast<Eigen::Index>(s.degree());
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
        for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -T::to_complex(s.coeff(static_cast<std::size_t>(i)));
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        const S an = s.scaled(S(Rational(denominator_lcm(s)))).lead();
        const Complex anc = T::to_complex(an);
        bool found = false;
        for (Eigen::Index i = 0; i < n && !found; ++i) {
            const S cand = round_integral<S>(anc * es.eigenvalues()(i)) / an;
            if (T::is_zero(s(cand))) {
                deflate(cand);
                found = true;
            }
        }
        if (!found) break;
    }
    residual = s.degree() >= 1 ? s.monic() : UPoly<S>();
    return roots;
}

std::string matrix_text(const IntMatrix3& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < 3; ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < 3; ++j) s += (j ? ", " : "") + std::to_string(t[i][j]);
        s += "]";
    }
    return s + "]";
}

template <ExactScalar S>
struct FiniteLocus {
    std::size_t count = 0;
    std::vector<std::array<S, 3>> points;
    std::string residual;
};

template <ExactScalar S>
Matrix3<S> to_scalar_matrix(const IntMatrix3& t) {
    Matrix3<S> m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = ScalarTraits<S>::from_rational(Rational(t[i][j]));
    return m;
}

// Singular points of a cubic whose partials are linearly independent (so the
// singular locus is finite).
template <ExactScalar S>
FiniteLocus<S> solve_finite_locus(const MultiPoly<S>& f) {
    using T = ScalarTraits<S>;
    using MP = MultiPoly<S>;
    const auto& vars = f.vars();
    std::mt19937_64 rng(0x5eedcafeULL);
    std::uniform_int_distribution<long> small(-5, 5);
    const IntMatrix3 identity{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    for (int attempt = 0; attempt < 64; ++attempt) {
        const IntMatrix3 t = attempt == 0 ? identity : random_projectivity(rng);
        const auto d = partials(apply_linear(f, t));

        // Reject charts where a singular point lies on x2 = 0.
        const std::map<std::string, MP> at_infinity{{vars[2], MP(vars)}};
        MP common(vars);
        for (const auto& di : d) common = gcd(common, substitute(di, at_infinity, vars));
        if (common.is_zero() || !common.is_constant()) continue;

        const std::map<std::string, MP> chart{{vars[2], MP::constant(vars, T::one())}};
        std::array<MP, 3> a;
        for (std::size_t i = 0; i < 3; ++i) a[i] = substitute(d[i], chart, vars);

        std::array<MP, 3> h;
        for (auto& hk : h) {
            hk = MP(vars);
            for (const auto& ai : a) hk += ai.scaled(S(small(rng)));
        }
        const S lead0 = h[0].coefficient(0, 2).constant_term();
        if (T::is_zero(lead0)) continue;

        const auto r12 = UPoly<S>::from_multi(resultant(h[0], h[1], vars[0]), 1);
        const auto r13 = UPoly<S>::from_multi(resultant(h[0], h[2], vars[0]), 1);
        const auto g = gcd(r12, r13);
        if (g.is_zero()) continue;
        const auto s = g.squarefree_part();
        if (s.degree() <= 0) return {};

        // Eliminate x0^2 between h0 and h1: l1 x0 + l0 = 0 on the common zeros.
        const S lead1 = h[1].coefficient(0, 2).constant_term();
        const MP l = h[0].scaled(lead1) - h[1].scaled(lead0);
        if (l.degree(0) > 1) throw std::logic_error("x0^2 elimination failed");
        const auto l1 = UPoly<S>::from_multi(l.coefficient(0, 1), 1);
        const auto l0 = UPoly<S>::from_multi(l.coefficient(0, 0), 1);
        const auto inv = inverse_mod(l1, s);
        if (!inv) continue;  // two candidate points share an x1 coordinate
        const UPoly<S> phi = (UPoly<S>::constant(-T::one()) * l0 * *inv) % s;

        // Keep exactly the x1 values where (phi(x1), x1, 1) kills every partial.
        UPoly<S> sure = s;
        for (const auto& ai : a) {
            UPoly<S> e;
            for (int k = 2; k >= 0; --k) e = (e * phi + UPoly<S>::from_multi(ai.coefficient(0, k), 1)) % s;
            sure = gcd(sure, e);
        }

        FiniteLocus<S> out;
        out.count = static_cast<std::size_t>(std::max(sure.degree(), 0));
        UPoly<S> rest;
        const auto tm = to_scalar_matrix<S>(t);
        for (const S& r : field_roots(sure, rest)) {
            const std::array<S, 3> y{phi(r), r, T::one()};
            std::array<S, 3> x{};
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) x[i] += tm[i][j] * y[j];
            out.points.push_back(normalized(x));
        }
        if (!rest.is_zero()) {
            const std::vector<std::string> tv{"t"};
            out.residual = std::to_string(rest.degree()) + " point(s) over an extension: x = T*(phi(t), t, 1) with T = " +
                           matrix_text(t) + ", phi(t) = " + to_string((phi % rest).to_multi(tv, 0)) +
                           ", t a root of " + to_string(rest.to_multi(tv, 0));
        }
        return out;
    }
    throw std::logic_error("no generic chart found for the singular locus");
}

}  // namespace

template <PolyScalar S>
MultiPoly<S> apply_linear(const MultiPoly<S>& f, const IntMatrix3& t) {
    std::array<std::array<S, 3>, 3> m;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m[i][j] = ScalarTraits<S>::from_rational(Rational(t[i][j]));
    return apply_matrix(f, m);
}

template <ExactScalar S>
CubicClass<S> classify(const MultiPoly<S>& f) {
    using T = ScalarTraits<S>;
    validate_cubic(f);
    auto m = partials_matrix(f);
    const auto pivots = rref(m);
    CubicClass<S> out{CubicKind::SmoothIrreducible, {}, 0};

    if (pivots.size() == 1) {
        out.kind = CubicKind::TripleLine;
        out.locus.one_dimensional = true;
        return out;
    }
    if (pivots.size() == 2) {
        // F is a cone with vertex p, the kernel of (l0, l1, l2) -> sum l_i dF/dx_i.
        std::array<S, 3> p{};
        for (std::size_t c = 0; c < 3; ++c) {
            if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
            p[c] = T::one();
            for (std::size_t r = 0; r < pivots.size(); ++r) p[pivots[r]] = -m[r][c];
        }
        p = normalized(p);
        const auto g = apply_matrix(f, chart_at(p));  // a binary cubic in the first two variables
        const auto coef = [&](int i) {
            auto it = g.terms().find(Exponent{3 - i, i, 0});
            return it == g.terms().end() ? T::zero() : it->second;
        };
        const S a = coef(0), b = coef(1), c = coef(2), d = coef(3);
        const S disc = b * b * c * c - S(4) * a * c * c * c - S(4) * b * b * b * d - S(27) * a * a * d * d +
                       S(18) * a * b * c * d;
        if (T::is_zero(disc)) {
            out.kind = CubicKind::DoubleLinePlusLine;
            out.locus.one_dimensional = true;
        } else {
            out.kind = CubicKind::ThreeConcurrentLines;
            out.locus.count = 1;
            out.locus.points.push_back({p, PointType::HigherMultiplicity});
        }
        return out;
    }

    const auto fl = solve_finite_locus(f);
    out.locus.count = fl.count;
    out.locus.residual = fl.residual;
    std::vector<LocalForm<S>> forms;
    for (const auto& p : fl.points) {
        forms.push_back(local_form(f, p));
        out.locus.points.push_back({p, point_type(forms.back())});
    }
    switch (fl.count) {
        case 0: out.kind = CubicKind::SmoothIrreducible; break;
        case 2:
            out.kind = CubicKind::LinePlusConic;
            out.line_conic_intersections = 2;
            break;
        case 3: out.kind = CubicKind::ThreeGeneralLines; break;
        case 1: {
            if (forms.empty()) throw std::logic_error("unique singular point was not rational");
            const auto type = out.locus.points[0].type;
            if (type == PointType::Node) {
                out.kind = CubicKind::IrreducibleNodal;
            } else if (type == PointType::Cusp && tangent_line_is_component(forms[0])) {
                out.kind = CubicKind::LinePlusConic;
                out.line_conic_intersections = 1;
            } else if (type == PointType::Cusp) {
                out.kind = CubicKind::IrreducibleCuspidal;
            } else {
                throw std::logic_error("triple point on a cubic that is not a cone");
            }
            break;
        }
        default: throw std::logic_error("reduced cubic with more than three singular points");
    }
    return out;
}

template <ExactScalar S>
SingularLocus<S> singular_points(const MultiPoly<S>& f) {
    return classify(f).locus;
}

template <ExactScalar S>
bool pgl_invariance_check(const MultiPoly<S>& f, int trials, std::uint64_t seed) {
    const CubicKind base = classify(f).kind;
    std::mt19937_64 rng(seed);
    for (int k = 0; k < trials; ++k)
        if (classify(apply_linear(f, random_projectivity(rng))).kind != base) return false;
    return true;
}

template CubicClass<Rational> classify(const MultiPoly<Rational>&);
template CubicClass<GaussRational> classify(const MultiPoly<GaussRational>&);
template SingularLocus<Rational> singular_points(const MultiPoly<Rational>&);
template SingularLocus<GaussRational> singular_points(const MultiPoly<GaussRational>&);
template bool pgl_invariance_check(const MultiPoly<Rational>&, int, std::uint64_t);
template bool pgl_invariance_check(const MultiPoly<GaussRational>&, int, std::uint64_t);
template MultiPoly<Rational> apply_linear(const MultiPoly<Rational>&, const IntMatrix3&);
template MultiPoly<GaussRational> apply_linear(const MultiPoly<GaussRational>&, const IntMatrix3&);
template MultiPoly<Complex> apply_linear(const MultiPoly<Complex>&, const IntMatrix3&);

}  // namespace polycurve
