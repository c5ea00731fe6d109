#pragma once

// Numerical checks on the bounded symmetric domain of 2x2 matrices
// {Z : Id - Z^t conj(Z) > 0} acted on by SU(2,2), and fixed points of
// automorphisms of (P^1)^r that permute the factors.
//
// g = [[A, B], [C, D]] preserves the Hermitian form diag(Id, -Id); it acts by
// Z -> (AZ + B)(CZ + D)^{-1}, whose differential is dZ -> (A - WC) dZ (CZ + D)^{-1}.

#include "polycurve/errors.hpp"
#include "polycurve/scalar.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polycurve {

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

struct SU22Element {
    Mat2 A = Mat2::Identity(), B = Mat2::Zero(), C = Mat2::Zero(), D = Mat2::Identity();

    Mat4 matrix() const;
    static SU22Element from_matrix(const Mat4& m);
    friend SU22Element operator*(const SU22Element& g, const SU22Element& h) {
        return from_matrix(g.matrix() * h.matrix());
    }
};

struct SU22Residuals {
    double unitary_a;  // |A*A - C*C - Id|
    double unitary_b;  // |B*B - D*D + Id|
    double cross;      // |B*A - D*C|
    double det;        // |det g - 1|
    bool valid;

    double max() const { return std::max({unitary_a, unitary_b, cross, det}); }
};

SU22Residuals check_su22(const Mat2& A, const Mat2& B, const Mat2& C, const Mat2& D, double tol = 1e-9);
inline SU22Residuals check_su22(const SU22Element& g, double tol = 1e-9) { return check_su22(g.A, g.B, g.C, g.D, tol); }

/// Smallest eigenvalue of Id - Z^t conj(Z); positive exactly on the domain.
double siegel_margin(const Mat2& Z);

struct SiegelPoint {
    Mat2 Z = Mat2::Zero();

    /// Throws DomainError("outside_domain") unless siegel_margin(Z) > tol.
    static SiegelPoint checked(const Mat2& Z, double tol = 1e-12);
};

/// Denominators with condition number above this are refused.
inline constexpr double kMaxDenominatorCondition = 1e12;

SiegelPoint moebius_action(const SU22Element& g, const SiegelPoint& z);

struct SemiInvariance {
    Complex lhs;  // det(A Z D^{-1})
    Complex rhs;  // det(A)^2 det(Z)
    double residual;
    // precondition residuals
    double unitary_a, unitary_d, det_product;

    bool preconditions_hold(double tol) const { return unitary_a <= tol && unitary_d <= tol && det_product <= tol; }
};

/// Never throws on a failed precondition: the residuals say by how much.
SemiInvariance holonomy_semiinvariance(const Mat2& A, const Mat2& D, const Mat2& Z);

template <typename S>
using SMat2 = std::array<std::array<S, 2>, 2>;

template <typename S>
struct QuarticFactor {
    S det4;       // determinant of X -> P X Q on 2x2 matrices, built entry by entry
    S predicted;  // det(P)^2 det(Q)^2
};

template <typename S>
S det2(const SMat2<S>& m) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

/// Leibniz expansion, exact for exact scalars.
template <typename S>
S det4_leibniz(const std::array<std::array<S, 4>, 4>& m) {
    std::array<int, 4> p{0, 1, 2, 3};
    S total = S(0);
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) inversions += p[static_cast<std::size_t>(i)] > p[static_cast<std::size_t>(j)];
        S term = S(1);
        for (std::size_t i = 0; i < 4; ++i) term = term * m[i][static_cast<std::size_t>(p[i])];
        if (inversions % 2)
            total -= term;
        else
            total += term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

template <typename S>
QuarticFactor<S> quartic_invariance_factor(const SMat2<S>& P, const SMat2<S>& Q) {
    // Column k of the 4x4 matrix is vec(P E_k Q), vec stacking columns.
    std::array<std::array<S, 4>, 4> m{};
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t r = k % 2, c = k / 2;  // E_k = e_r e_c^t
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m[i + 2 * j][k] = P[i][r] * Q[c][j];
    }
    const S dp = det2(P), dq = det2(Q);
    return {det4_leibniz(m), dp * dp * dq * dq};
}

QuarticFactor<Complex> quartic_invariance_factor(const Mat2& P, const Mat2& Q);

struct TensorInvariance {
    double factor_residual;  // det(P)^2 det(Q)^2 against the 4x4 Jacobian determinant
    double fd_residual;      // 4x4 determinant against a finite-difference Jacobian
    double chain_residual;   // det(P) det(CZ + D) against det(g)
    std::optional<double> schur_residual;  // det(C) det(AC^{-1}D - B) against det(g), C well conditioned only
    double residual;         // max of the above
};

TensorInvariance tensor_invariance_check(const SU22Element& g, const SiegelPoint& z, double fd_step = 1e-6);

// --- samplers ---------------------------------------------------------------

/// A = D = diag(cosh t, 1), B = C = diag(sinh t, 0).
SU22Element boost(double t);

/// exp of a random traceless [[a, b], [b*, d]] with a, d skew-Hermitian and b
/// Gaussian of standard deviation `spread`.
SU22Element random_su22(std::mt19937_64& rng, double spread = 0.5);

/// Random unitary 2x2 pair with det(A) det(D) = 1.
std::pair<Mat2, Mat2> random_unitary_pair(std::mt19937_64& rng);

/// Random point with operator norm at most max_radius.
SiegelPoint random_siegel_point(std::mt19937_64& rng, double max_radius = 0.95);

/// Worst residuals over `samples` seeded (g, Z) pairs; g from random_su22,
/// Z from random_siegel_point, plus a unitary pair for the semi-invariance.
struct HolonomyStats {
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    double su22_max = 0;          // relations and det of the sampled g
    std::size_t domain_preserved = 0;
    double min_margin = 1;        // smallest siegel_margin of an image point
    double homomorphism_max = 0;  // action(g1 g2, Z) against action(g1, action(g2, Z))
    double quartic_max = 0;       // det4 against det(P)^2 det(Q)^2, relative
    double semiinvariance_max = 0;
    double tensor_invariance_max = 0;

    /// The fixed acceptance thresholds: su22 <= tol, homomorphism, quartic and
    /// semi-invariance <= 1e-10, tensor invariance <= 1e-8, all points preserved.
    bool passes(double tol = 1e-9) const;
};

HolonomyStats verify_holonomy(std::size_t samples, std::uint64_t seed);

// --- fixed points on (P^1)^r ------------------------------------------------

/// (psi(x))_i = psi_i(x_{sigma(i)}); sigma is 0-based. A point of P^1 is
/// (x0 : x1) with affine coordinate x0 / x1, so (1 : 0) is infinity.
template <typename S>
struct PolydiskAutomorphism {
    std::vector<std::size_t> sigma;
    std::vector<SMat2<S>> psi;

    std::size_t arity() const { return sigma.size(); }
};

using ProjPoint = Eigen::Vector2cd;

enum class CycleKind { Identity, Elliptic, Hyperbolic, Parabolic };
std::string to_string(CycleKind k);

struct FixedPoint {
    std::vector<ProjPoint> x;               // unit norm, first nonzero coordinate real positive
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<CycleKind> cycle_kinds;
    double residual;                        // max chordal distance between psi(x)_i and x_i
};

enum class EigenChoice { LargerModulus, SmallerModulus };

/// Throws DomainError("bad_automorphism") on a non-bijective sigma or a
/// singular matrix.
FixedPoint polydisk_fixed_point(const PolydiskAutomorphism<Complex>& a, EigenChoice choice = EigenChoice::LargerModulus);

/// Exact version: nullopt when some cycle product has irrational eigenvalues.
/// Points are normalized with first nonzero coordinate 1.
std::optional<std::vector<std::array<Rational, 2>>> polydisk_fixed_point_exact(
    const PolydiskAutomorphism<Rational>& a, EigenChoice choice = EigenChoice::LargerModulus);

double chordal_distance(const ProjPoint& u, const ProjPoint& v);
ProjPoint normalize_point(const ProjPoint& p);

/// Max over i of the chordal distance between psi_i(x_sigma(i)) and x_i.
double fixed_point_residual(const PolydiskAutomorphism<Complex>& a, const std::vector<ProjPoint>& x);

/// Arity in [1, max_arity]; about a quarter of the samples use only
/// translations z -> z + t, whose cycle products are parabolic or trivial.
PolydiskAutomorphism<Complex> random_polydisk_automorphism(std::mt19937_64& rng, std::size_t max_arity = 5);

}  // namespace polycurve
