// Numerical cubic classification.
//
// The span of the partials is measured by SVD, the length tau of the singular
// scheme by the nullity of the degree-5 Macaulay matrix of the Jacobian ideal,
// and the number of distinct singular points by the eigenvalues of a
// multiplication operator acting on that null space. (tau, #points) then
// determines the class.

#include "polycurve/cubic_classify.hpp"

#include "polycurve/poly_algorithms.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <random>

namespace polycurve {

namespace {

using CPoly = MultiPoly<Complex>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

[[noreturn]] void ambiguous(const std::string& what) {
    throw DomainError("ambiguous_near_tolerance", what + " is within a factor of 10 of the tolerance");
}

// Relative magnitude r is zero (r <= tol), nonzero (r > 10 tol), or ambiguous.
bool is_negligible(double r, double tol, const std::string& what) {
    if (r <= tol) return true;
    if (r <= 10 * tol) ambiguous(what);
    return false;
}

std::vector<Exponent> monomials(int d) {
    std::vector<Exponent> out;
    for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
    return out;
}

std::size_t index_in(const std::vector<Exponent>& monos, const Exponent& e) {
    return static_cast<std::size_t>(std::find(monos.begin(), monos.end(), e) - monos.begin());
}

int numeric_rank(const Eigen::VectorXd& sv, double tol, const std::string& what) {
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (!is_negligible(sv(i) / sv(0), tol, what)) ++r;
    return r;
}

MatrixXcd coefficient_columns(const std::vector<CPoly>& polys, const std::vector<Exponent>& monos) {
    MatrixXcd m = MatrixXcd::Zero(static_cast<Eigen::Index>(monos.size()), static_cast<Eigen::Index>(polys.size()));
    for (std::size_t j = 0; j < polys.size(); ++j)
        for (const auto& [e, c] : polys[j].terms())
            m(static_cast<Eigen::Index>(index_in(monos, e)), static_cast<Eigen::Index>(j)) = c;
    return m;
}

CPoly compose(const CPoly& f, const Eigen::Matrix3cd& m) {
    const auto& vars = f.vars();
    std::map<std::string, CPoly> sub;
    for (std::size_t i = 0; i < 3; ++i) {
        CPoly img(vars);
        for (std::size_t j = 0; j < 3; ++j)
            img += CPoly::variable(vars, vars[j]).scaled(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        sub.emplace(vars[i], img);
    }
    return substitute(f, sub, vars);
}

std::array<Complex, 3> normalized(const Eigen::Vector3cd& p) {
    const double scale = p.cwiseAbs().maxCoeff();
    std::array<Complex, 3> out{};
    for (Eigen::Index i = 0; i < 3; ++i) {
        if (std::abs(p(i)) <= 1e-6 * scale) continue;
        const Complex inv = 1.0 / p(i);
        for (Eigen::Index j = 0; j < 3; ++j) {
            const Complex v = p(j) * inv;
            out[static_cast<std::size_t>(j)] = std::abs(v) <= 1e-12 ? Complex{} : v;
        }
        break;
    }
    return out;
}

// Distinct points of the singular scheme with kernel basis N of the Macaulay matrix.
std::vector<std::array<Complex, 3>> distinct_points(const MatrixXcd& kernel, double tol) {
    const auto m5 = monomials(5), m4 = monomials(4);
    const Eigen::Index tau = kernel.cols();
    std::array<MatrixXcd, 3> shifted;
    for (int j = 0; j < 3; ++j) {
        shifted[static_cast<std::size_t>(j)].resize(static_cast<Eigen::Index>(m4.size()), tau);
        for (std::size_t r = 0; r < m4.size(); ++r) {
            Exponent e = m4[r];
            e[static_cast<std::size_t>(j)] += 1;
            shifted[static_cast<std::size_t>(j)].row(static_cast<Eigen::Index>(r)) =
                kernel.row(static_cast<Eigen::Index>(index_in(m5, e)));
        }
    }
    std::mt19937_64 rng(0xc0ffeeULL);
    std::normal_distribution<double> nd;
    const double merge = std::pow(tol, 0.25);
    // Two distinct points can project close together for an unlucky pencil, but
    // not for every pencil: keep the largest count over three clean attempts.
    std::vector<std::array<Complex, 3>> best;
    int clean = 0;
    for (int attempt = 0; attempt < 12 && clean < 3; ++attempt) {
        MatrixXcd w0 = MatrixXcd::Zero(shifted[0].rows(), tau), w1 = w0;
        for (const auto& s : shifted) {
            w0 += Complex(nd(rng), nd(rng)) * s;
            w1 += Complex(nd(rng), nd(rng)) * s;
        }
        Eigen::JacobiSVD<MatrixXcd> svd0(w0);
        const auto& sv = svd0.singularValues();
        if (sv(tau - 1) < 1e-6 * sv(0)) continue;  // a point on the chosen line at infinity
        const MatrixXcd op = w0.completeOrthogonalDecomposition().pseudoInverse() * w1;
        Eigen::ComplexEigenSolver<MatrixXcd> es(op);
        const VectorXcd& ev = es.eigenvalues();
        const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());

        // Single-linkage clustering; a gap just above the merge radius is ambiguous.
        std::vector<Eigen::Index> parent(static_cast<std::size_t>(tau));
        std::iota(parent.begin(), parent.end(), 0);
        const auto find = [&](Eigen::Index i) {
            while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
            return i;
        };
        bool unclear = false;
        for (Eigen::Index a = 0; a < tau; ++a)
            for (Eigen::Index b = a + 1; b < tau; ++b) {
                const double d = std::abs(ev(a) - ev(b)) / scale;
                if (d <= merge) parent[static_cast<std::size_t>(find(b))] = find(a);
                else if (d <= 10 * merge) unclear = true;
            }
        if (unclear) continue;

        std::vector<std::array<Complex, 3>> pts;
        for (Eigen::Index a = 0; a < tau; ++a) {
            if (find(a) != a) continue;
            const VectorXcd pv = kernel * es.eigenvectors().col(a);
            const auto pure = [&](std::size_t j) {
                Exponent e(3, 0);
                e[j] = 5;
                return std::abs(pv(static_cast<Eigen::Index>(index_in(m5, e))));
            };
            std::size_t k = 0;
            for (std::size_t j = 1; j < 3; ++j)
                if (pure(j) > pure(k)) k = j;
            Eigen::Vector3cd p;
            for (Eigen::Index i = 0; i < 3; ++i) {
                Exponent e(3, 0);
                e[k] = 4;
                e[static_cast<std::size_t>(i)] += 1;
                p(i) = pv(static_cast<Eigen::Index>(index_in(m5, e)));
            }
            pts.push_back(normalized(p));
        }
        ++clean;
        if (pts.size() > best.size()) best = std::move(pts);
    }
    if (clean == 0) ambiguous("singular point separation");
    return best;
}

}  // namespace

FloatCubicClass classify_float(const MultiPoly<Complex>& f_in, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    validate_cubic(f_in);
    double big = 0;
    for (const auto& [e, c] : f_in.terms()) big = std::max(big, std::abs(c));
    const CPoly f = f_in.scaled(Complex(1.0 / big, 0.0));
    const auto d = partials(f);

    FloatCubicClass out{CubicKind::SmoothIrreducible, false, {}, 0, 0};
    const MatrixXcd a = coefficient_columns(d, monomials(2));
    Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeFullV);
    const int rank = numeric_rank(svd.singularValues(), tol, "span of the partial derivatives");

    if (rank <= 1) {
        out.kind = CubicKind::TripleLine;
        out.one_dimensional = true;
        return out;
    }
    if (rank == 2) {
        const Eigen::Vector3cd p = svd.matrixV().col(2);
        Eigen::Index k = 0;
        p.cwiseAbs().maxCoeff(&k);
        Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
        Eigen::Index col = 0;
        for (Eigen::Index i = 0; i < 3; ++i)
            if (i != k) m(i, col++) = 1.0;
        m.col(2) = p;
        const CPoly g = compose(f, m);
        const auto coef = [&](int i) {
            auto it = g.terms().find(Exponent{3 - i, i, 0});
            return it == g.terms().end() ? Complex{} : it->second;
        };
        const Complex ca = coef(0), cb = coef(1), cc = coef(2), cd = coef(3);
        const double s = std::max({std::abs(ca), std::abs(cb), std::abs(cc), std::abs(cd)});
        const Complex disc = cb * cb * cc * cc - 4.0 * ca * cc * cc * cc - 4.0 * cb * cb * cb * cd -
                             27.0 * ca * ca * cd * cd + 18.0 * ca * cb * cc * cd;
        if (is_negligible(std::abs(disc) / std::pow(s, 4), tol, "binary cubic discriminant")) {
            out.kind = CubicKind::DoubleLinePlusLine;
            out.one_dimensional = true;
        } else {
            out.kind = CubicKind::ThreeConcurrentLines;
            out.jacobian_length = 4;
            out.points.push_back({normalized(p), PointType::HigherMultiplicity});
        }
        return out;
    }

    // Macaulay matrix of the Jacobian ideal in degree 5.
    const auto m3 = monomials(3), m5 = monomials(5);
    MatrixXcd mac = MatrixXcd::Zero(static_cast<Eigen::Index>(m5.size()), static_cast<Eigen::Index>(3 * m3.size()));
    Eigen::Index c = 0;
    for (const auto& di : d)
        for (const auto& sh : m3) {
            for (const auto& [e, v] : di.terms())
                mac(static_cast<Eigen::Index>(index_in(m5, {e[0] + sh[0], e[1] + sh[1], e[2] + sh[2]})), c) = v;
            ++c;
        }
    // Work with the transpose so the kernel sits in U's trailing columns.
    Eigen::JacobiSVD<MatrixXcd> msvd(mac, Eigen::ComputeFullU);
    const int mrank = numeric_rank(msvd.singularValues(), tol, "Jacobian ideal rank");
    const auto tau = static_cast<Eigen::Index>(m5.size()) - mrank;
    out.jacobian_length = static_cast<int>(tau);
    if (tau == 0) return out;

    // Functionals vanishing on the ideal in degree 5: left null space of mac.
    const MatrixXcd kernel = msvd.matrixU().rightCols(tau).conjugate();
    const auto pts = distinct_points(kernel, tol);
    const auto n = pts.size();
    PointType type = PointType::Node;
    if (tau == 1 && n == 1) {
        out.kind = CubicKind::IrreducibleNodal;
    } else if (tau == 2 && n == 1) {
        out.kind = CubicKind::IrreducibleCuspidal;
        type = PointType::Cusp;
    } else if (tau == 2 && n == 2) {
        out.kind = CubicKind::LinePlusConic;
        out.line_conic_intersections = 2;
    } else if (tau == 3 && n == 1) {
        out.kind = CubicKind::LinePlusConic;
        out.line_conic_intersections = 1;
        type = PointType::Cusp;
    } else if (tau == 3 && n == 3) {
        out.kind = CubicKind::ThreeGeneralLines;
    } else {
        ambiguous("singular scheme (length " + std::to_string(tau) + ", " + std::to_string(n) + " points)");
    }
    for (const auto& p : pts) out.points.push_back({p, type});
    return out;
}

}  // namespace polycurve
