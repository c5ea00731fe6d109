#include "polycurve/hermitian_domain.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polycurve {

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double condition(const Mat2& m) {
    Eigen::JacobiSVD<Mat2> svd(m);
    const auto& s = svd.singularValues();
    return s(1) == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / s(1);
}

// The fractional linear map without the domain bookkeeping; also used off the
// domain by the finite-difference stencil.
Mat2 act(const SU22Element& g, const Mat2& Z) {
    const Mat2 den = g.C * Z + g.D;
    if (!(condition(den) <= kMaxDenominatorCondition))
        throw DomainError("singular_denominator", "CZ + D is numerically singular");
    return (g.A * Z + g.B) * den.inverse();
}

Eigen::Vector4cd vec(const Mat2& m) { return Eigen::Map<const Eigen::Vector4cd>(m.data()); }

Mat2 random_gaussian(std::mt19937_64& rng, double sd) {
    std::normal_distribution<double> nd(0.0, sd);
    Mat2 m;
    for (Eigen::Index i = 0; i < 4; ++i) m(i) = Complex(nd(rng), nd(rng));
    return m;
}

Mat2 skew_hermitian(std::mt19937_64& rng) {
    const Mat2 h = random_gaussian(rng, 1.0);
    return (h - h.adjoint()) / 2.0;
}

}  // namespace

Mat4 SU22Element::matrix() const {
    Mat4 m;
    m << A, B, C, D;
    return m;
}

SU22Element SU22Element::from_matrix(const Mat4& m) {
    return {m.topLeftCorner<2, 2>(), m.topRightCorner<2, 2>(), m.bottomLeftCorner<2, 2>(), m.bottomRightCorner<2, 2>()};
}

SU22Residuals check_su22(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D, double tol) {
    const Mat2 id = Mat2::Identity();
    SU22Residuals r{};
    r.unitary_a = max_abs(A.adjoint() * A - C.adjoint() * C - id);
    r.unitary_b = max_abs(B.adjoint() * B - D.adjoint() * D + id);
    r.cross = max_abs(B.adjoint() * A - D.adjoint() * C);
    r.det = std::abs(SU22Element{A, B, C, D}.matrix().determinant() - 1.0);
    r.valid = r.max() <= tol;
    return r;
}

double siegel_margin(const Mat2& Z) {
    const Mat2 h = Mat2::Identity() - Z.transpose() * Z.conjugate();
    Eigen::SelfAdjointEigenSolver<Mat2> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

SiegelPoint SiegelPoint::checked(const Mat2& Z, double tol) {
    if (!(siegel_margin(Z) > tol)) throw DomainError("outside_domain", "Id - Z^t conj(Z) is not positive definite");
    return {Z};
}

SiegelPoint moebius_action(const SU22Element& g, const SiegelPoint& z) { return {act(g, z.Z)}; }

SemiInvariance holonomy_semiinvariance(const Mat2& A, const Mat2& D, const Mat2& Z) {
    const Mat2 id = Mat2::Identity();
    SemiInvariance s{};
    s.unitary_a = max_abs(A.adjoint() * A - id);
    s.unitary_d = max_abs(D.adjoint() * D - id);
    s.det_product = std::abs(A.determinant() * D.determinant() - 1.0);
    s.lhs = (A * Z * D.inverse()).determinant();
    const Complex da = A.determinant();
    s.rhs = da * da * Z.determinant();
    s.residual = std::abs(s.lhs - s.rhs);
    return s;
}

QuarticFactor<Complex> quartic_invariance_factor(const Mat2& P, const Mat2& Q) {
    SMat2<Complex> p, q;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            p[i][j] = P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            q[i][j] = Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    return quartic_invariance_factor(p, q);
}

TensorInvariance tensor_invariance_check(const SU22Element& g, const SiegelPoint& z, double fd_step) {
    const Mat2& Z = z.Z;
    const Mat2 den = g.C * Z + g.D;
    const Mat2 W = act(g, Z);
    const Mat2 P = g.A - W * g.C;
    const Mat2 Q = den.inverse();
    const auto qf = quartic_invariance_factor(P, Q);
    const double scale = std::max(1.0, std::abs(qf.det4));

    TensorInvariance t{};
    t.factor_residual = std::abs(qf.predicted - qf.det4) / scale;

    Mat4 jac;
    for (Eigen::Index k = 0; k < 4; ++k) {
        Mat2 e = Mat2::Zero();
        e(k) = fd_step;
        jac.col(k) = vec(act(g, Z + e) - act(g, Z - e)) / (2 * fd_step);
    }
    t.fd_residual = std::abs(jac.determinant() - qf.det4) / scale;

    const Complex det_g = g.matrix().determinant();
    t.chain_residual = std::abs(P.determinant() * den.determinant() - det_g);
    if (condition(g.C) <= 1e6) {
        const Complex schur = g.C.determinant() * (g.A * g.C.inverse() * g.D - g.B).determinant();
        t.schur_residual = std::abs(schur - det_g) / std::max(1.0, std::abs(schur));
    }
    t.residual = std::max({t.factor_residual, t.fd_residual, t.chain_residual, t.schur_residual.value_or(0.0)});
    return t;
}

SU22Element boost(double t) {
    SU22Element g;
    g.A = g.D = Eigen::Vector2cd(std::cosh(t), 1.0).asDiagonal();
    g.B = g.C = Eigen::Vector2cd(std::sinh(t), 0.0).asDiagonal();
    return g;
}

SU22Element random_su22(std::mt19937_64& rng, double spread) {
    Mat4 x;
    const Mat2 a = skew_hermitian(rng), d = skew_hermitian(rng), b = random_gaussian(rng, spread);
    x << a, b, b.adjoint(), d;
    x -= (x.trace() / 4.0) * Mat4::Identity();
    return SU22Element::from_matrix(x.exp());
}

std::pair<Mat2, Mat2> random_unitary_pair(std::mt19937_64& rng) {
    const Mat2 a = skew_hermitian(rng);
    Mat2 d = skew_hermitian(rng);
    d -= ((a.trace() + d.trace()) / 2.0) * Mat2::Identity();
    return {a.exp(), d.exp()};
}

SiegelPoint random_siegel_point(std::mt19937_64& rng, double max_radius) {
    const Mat2 m = random_gaussian(rng, 1.0);
    std::uniform_real_distribution<double> ud(0.0, max_radius);
    Eigen::JacobiSVD<Mat2> svd(m);
    return {m * (ud(rng) / svd.singularValues()(0))};
}

bool HolonomyStats::passes(double tol) const {
    return su22_max <= tol && domain_preserved == samples && homomorphism_max <= 1e-10 && quartic_max <= 1e-10 &&
           semiinvariance_max <= 1e-10 && tensor_invariance_max <= 1e-8;
}

HolonomyStats verify_holonomy(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    HolonomyStats st;
    st.samples = samples;
    st.seed = seed;
    for (std::size_t i = 0; i < samples; ++i) {
        const SU22Element g = random_su22(rng), h = random_su22(rng);
        const SiegelPoint z = random_siegel_point(rng);
        st.su22_max = std::max(st.su22_max, check_su22(g).max());

        const SiegelPoint w = moebius_action(g, z);
        const double margin = siegel_margin(w.Z);
        st.min_margin = std::min(st.min_margin, margin);
        if (margin > 0) ++st.domain_preserved;

        const Mat2 direct = moebius_action(g * h, z).Z, composed = moebius_action(g, moebius_action(h, z)).Z;
        st.homomorphism_max = std::max(st.homomorphism_max, max_abs(direct - composed));

        const Mat2 den = g.C * z.Z + g.D;
        const auto qf = quartic_invariance_factor(g.A - w.Z * g.C, den.inverse());
        st.quartic_max = std::max(st.quartic_max, std::abs(qf.det4 - qf.predicted) / std::max(1.0, std::abs(qf.predicted)));

        const auto [a, d] = random_unitary_pair(rng);
        st.semiinvariance_max = std::max(st.semiinvariance_max, holonomy_semiinvariance(a, d, z.Z).residual);

        st.tensor_invariance_max = std::max(st.tensor_invariance_max, tensor_invariance_check(g, z).residual);
    }
    return st;
}

// --- fixed points -------------------------------------------------------------

std::string to_string(CycleKind k) {
    switch (k) {
        case CycleKind::Identity: return "identity";
        case CycleKind::Elliptic: return "elliptic";
        case CycleKind::Hyperbolic: return "hyperbolic";
        case CycleKind::Parabolic: return "parabolic";
    }
    return "?";
}

ProjPoint normalize_point(const ProjPoint& p) {
    const double n = p.norm();
    if (n == 0.0) throw std::invalid_argument("(0 : 0) is not a point of P^1");
    ProjPoint q = p / n;
    const Eigen::Index lead = std::abs(q(0)) > 1e-14 ? 0 : 1;
    q *= std::conj(q(lead)) / std::abs(q(lead));
    if (lead == 1) q(0) = 0.0;
    return q;
}

double chordal_distance(const ProjPoint& u, const ProjPoint& v) {
    return std::abs(u(0) * v(1) - u(1) * v(0)) / (u.norm() * v.norm());
}

namespace {

using CMat = SMat2<Complex>;

Eigen::Matrix2cd to_eigen(const CMat& m) {
    Eigen::Matrix2cd e;
    e << m[0][0], m[0][1], m[1][0], m[1][1];
    return e;
}

void validate(const PolydiskAutomorphism<Complex>& a) {
    const std::size_t r = a.arity();
    if (r == 0 || a.psi.size() != r) throw DomainError("bad_automorphism", "need one Moebius matrix per factor");
    std::vector<bool> seen(r, false);
    for (std::size_t s : a.sigma) {
        if (s >= r || seen[s]) throw DomainError("bad_automorphism", "sigma is not a permutation");
        seen[s] = true;
    }
    for (const auto& m : a.psi) {
        const Eigen::Matrix2cd e = to_eigen(m);
        if (!(std::abs(e.determinant()) > 1e-14 * std::max(1.0, e.squaredNorm())))
            throw DomainError("bad_automorphism", "Moebius matrix is singular");
    }
}

std::vector<std::vector<std::size_t>> cycles_of(const std::vector<std::size_t>& sigma) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(sigma.size(), false);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> c;
        for (std::size_t j = i; !seen[j]; j = sigma[j]) {
            seen[j] = true;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool lex_greater(const ProjPoint& u, const ProjPoint& v) {
    const std::array<double, 4> a{u(0).real(), u(0).imag(), u(1).real(), u(1).imag()};
    const std::array<double, 4> b{v(0).real(), v(0).imag(), v(1).real(), v(1).imag()};
    return a > b;
}

struct Anchor {
    ProjPoint v;
    CycleKind kind;
};

Anchor anchor(const Eigen::Matrix2cd& m, EigenChoice choice) {
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double scale = m.cwiseAbs().maxCoeff();
    if (std::abs(b) <= 1e-13 * scale && std::abs(c) <= 1e-13 * scale && std::abs(a - d) <= 1e-13 * scale) {
        // Every point is fixed; the lexicographic rule picks (1 : 0).
        return {normalize_point(ProjPoint(1.0, 0.0)), CycleKind::Identity};
    }
    const Complex t = a + d, det = a * d - b * c;
    const Complex s = std::sqrt(t * t - 4.0 * det);
    const Complex q = std::abs(t + s) >= std::abs(t - s) ? t + s : t - s;
    const Complex l1 = q / 2.0, l2 = det / l1;  // |l1| >= |l2|

    const auto eigvec = [&](Complex l) {
        const ProjPoint v1(b, l - a), v2(l - d, c);
        return normalize_point(v1.norm() >= v2.norm() ? v1 : v2);
    };
    CycleKind kind;
    const double rel = std::abs(s) / std::max(std::abs(t), std::sqrt(std::abs(det)));
    if (rel <= 1e-7)
        kind = CycleKind::Parabolic;
    else if (std::abs(std::abs(l1) - std::abs(l2)) <= 1e-12 * std::abs(l1))
        kind = CycleKind::Elliptic;
    else
        kind = CycleKind::Hyperbolic;

    if (kind == CycleKind::Parabolic) return {eigvec(l1), kind};
    if (kind == CycleKind::Elliptic) {
        const ProjPoint u = eigvec(l1), w = eigvec(l2);
        return {lex_greater(u, w) ? u : w, kind};
    }
    return {eigvec(choice == EigenChoice::LargerModulus ? l1 : l2), kind};
}

}  // namespace

double fixed_point_residual(const PolydiskAutomorphism<Complex>& a, const std::vector<ProjPoint>& x) {
    double worst = 0;
    for (std::size_t i = 0; i < a.arity(); ++i)
        worst = std::max(worst, chordal_distance(to_eigen(a.psi[i]) * x[a.sigma[i]], x[i]));
    return worst;
}

FixedPoint polydisk_fixed_point(const PolydiskAutomorphism<Complex>& a, EigenChoice choice) {
    validate(a);
    FixedPoint out;
    out.x.assign(a.arity(), ProjPoint::Zero());
    out.cycles = cycles_of(a.sigma);
    for (const auto& cyc : out.cycles) {
        // x_{c0} = psi_{c0} psi_{c1} ... psi_{c(k-1)} (x_{c0}).
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
        for (std::size_t i : cyc) {
            m = m * to_eigen(a.psi[i]);
            m /= m.cwiseAbs().maxCoeff();
        }
        const Anchor an = anchor(m, choice);
        out.cycle_kinds.push_back(an.kind);
        out.x[cyc[0]] = an.v;
        for (std::size_t j = cyc.size(); j-- > 1;)
            out.x[cyc[j]] = normalize_point(to_eigen(a.psi[cyc[j]]) * out.x[a.sigma[cyc[j]]]);
    }
    out.residual = fixed_point_residual(a, out.x);
    return out;
}

std::optional<std::vector<std::array<Rational, 2>>> polydisk_fixed_point_exact(const PolydiskAutomorphism<Rational>& a,
                                                                               EigenChoice choice) {
    using RMat = SMat2<Rational>;
    using RPoint = std::array<Rational, 2>;
    const std::size_t r = a.arity();
    {
        // Reuse the float validation for the shape and the permutation.
        PolydiskAutomorphism<Complex> shape{a.sigma, std::vector<SMat2<Complex>>(r, SMat2<Complex>{{{1.0, 0.0}, {0.0, 1.0}}})};
        if (a.psi.size() != r) throw DomainError("bad_automorphism", "need one Moebius matrix per factor");
        validate(shape);
        for (const auto& m : a.psi)
            if (sgn(det2(m)) == 0) throw DomainError("bad_automorphism", "Moebius matrix is singular");
    }
    const auto mul = [](const RMat& x, const RMat& y) {
        RMat z;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        return z;
    };
    const auto apply = [](const RMat& m, const RPoint& p) {
        return RPoint{m[0][0] * p[0] + m[0][1] * p[1], m[1][0] * p[0] + m[1][1] * p[1]};
    };
    const auto normalize = [](RPoint p) {
        const Rational lead = sgn(p[0]) != 0 ? p[0] : p[1];
        p[0] /= lead;
        p[1] /= lead;
        return p;
    };

    std::vector<RPoint> x(r);
    for (const auto& cyc : cycles_of(a.sigma)) {
        RMat m{{{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}};
        for (std::size_t i : cyc) m = mul(m, a.psi[i]);
        const Rational &p = m[0][0], &b = m[0][1], &c = m[1][0], &d = m[1][1];
        RPoint v;
        if (sgn(b) == 0 && sgn(c) == 0 && p == d) {
            v = {Rational(1), Rational(0)};
        } else {
            const Rational t = p + d, det = p * d - b * c;
            const auto s = exact_sqrt(t * t - 4 * det);
            if (!s) return std::nullopt;
            const Rational l1 = (t + *s) / 2, l2 = (t - *s) / 2;
            const auto eigvec = [&](const Rational& l) {
                const RPoint v1{b, l - p}, v2{l - d, c};
                return normalize(sgn(v1[0]) != 0 || sgn(v1[1]) != 0 ? v1 : v2);
            };
            const Rational m1 = abs(l1), m2 = abs(l2);
            if (m1 == m2) {
                const RPoint u = eigvec(l1), w = eigvec(l2);
                v = u > w ? u : w;
            } else {
                const bool first = (m1 > m2) == (choice == EigenChoice::LargerModulus);
                v = eigvec(first ? l1 : l2);
            }
        }
        x[cyc[0]] = v;
        for (std::size_t j = cyc.size(); j-- > 1;) x[cyc[j]] = normalize(apply(a.psi[cyc[j]], x[a.sigma[cyc[j]]]));
    }
    return x;
}

PolydiskAutomorphism<Complex> random_polydisk_automorphism(std::mt19937_64& rng, std::size_t max_arity) {
    std::uniform_int_distribution<std::size_t> arity(1, max_arity);
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> shift(-3, 3);
    PolydiskAutomorphism<Complex> a;
    const std::size_t r = arity(rng);
    a.sigma.resize(r);
    std::iota(a.sigma.begin(), a.sigma.end(), 0);
    std::shuffle(a.sigma.begin(), a.sigma.end(), rng);
    const bool translations = std::uniform_int_distribution<int>(0, 3)(rng) == 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (translations) {
            a.psi.push_back({{{1.0, static_cast<double>(shift(rng))}, {0.0, 1.0}}});
            continue;
        }
        SMat2<Complex> m;
        do {
            for (auto& row : m)
                for (auto& e : row) e = Complex(nd(rng), nd(rng));
        } while (std::abs(det2(m)) < 0.1);
        a.psi.push_back(m);
    }
    return a;
}

}  // namespace polycurve
