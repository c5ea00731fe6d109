#pragma once

// Plane projective cubics: singular locus and the eight-way classification
// (smooth, nodal, cuspidal, line + conic, double line + line, three concurrent
// lines, three general lines, triple line), plus the holonomy consequence
// attached to each type.
//
// Exact path. The rank of the span of the three partials separates the cones
// (rank <= 2: F only involves two linear forms) from curves with finitely many
// singular points. Cones are classified by the discriminant of the binary cubic
// they reduce to. Otherwise the singular points are eliminated to one variable
// by resultants in a random chart, certified by back-substitution, and counted;
// a single singular point is classified by its tangent cone.

#include "polycurve/errors.hpp"
#include "polycurve/multipoly.hpp"
#include "polycurve/upoly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace polycurve {

enum class CubicKind {
    SmoothIrreducible,
    IrreducibleNodal,
    IrreducibleCuspidal,
    LinePlusConic,
    DoubleLinePlusLine,
    ThreeConcurrentLines,
    ThreeGeneralLines,
    TripleLine,
};

/// Tangent cone of a singular point: two distinct lines, a double line, or
/// vanishing quadratic part.
enum class PointType { Node, Cusp, HigherMultiplicity };

enum class HolonomyKind { StabilizerFinite, SplitsCompletely, ExcludedByBogomolov };

struct HolonomyVerdict {
    HolonomyKind kind;
    std::string clause;
};

std::string to_string(CubicKind k);
std::string to_string(PointType t);
std::string to_string(HolonomyKind k);
std::optional<CubicKind> parse_cubic_kind(const std::string& s);

HolonomyVerdict holonomy_verdict(CubicKind k);

template <PolyScalar S>
struct SingularPoint {
    std::array<S, 3> coords;  // first nonzero coordinate is 1
    PointType type;
};

template <PolyScalar S>
struct SingularLocus {
    bool one_dimensional = false;
    std::size_t count = 0;                   // distinct points when finite
    std::vector<SingularPoint<S>> points;    // those with coordinates in the field
    std::string residual;                    // univariate certificate for the rest
};

template <PolyScalar S>
struct CubicClass {
    CubicKind kind;
    SingularLocus<S> locus;
    int line_conic_intersections = 0;  // 1 (tangent) or 2, for LinePlusConic
};

/// Checks degree-3 homogeneity in exactly three variables.
template <PolyScalar S>
void validate_cubic(const MultiPoly<S>& f) {
    if (f.nvars() != 3) throw DomainError("not_a_plane_cubic", "a plane cubic needs exactly three variables");
    if (f.is_zero()) throw DomainError("not_a_plane_cubic", "the zero polynomial is not a cubic");
    if (f.homogeneous_degree() != 3) throw DomainError("not_a_plane_cubic", "polynomial is not homogeneous of degree 3");
}

template <ExactScalar S>
SingularLocus<S> singular_points(const MultiPoly<S>& f);

template <ExactScalar S>
CubicClass<S> classify(const MultiPoly<S>& f);

using IntMatrix3 = std::array<std::array<long, 3>, 3>;

/// F(T x) for an integer matrix T.
template <PolyScalar S>
MultiPoly<S> apply_linear(const MultiPoly<S>& f, const IntMatrix3& t);

/// Random integer matrix with entries in [-3, 3] and nonzero determinant.
IntMatrix3 random_projectivity(std::mt19937_64& rng);

/// True iff classify is unchanged under `trials` random integer projectivities.
template <ExactScalar S>
bool pgl_invariance_check(const MultiPoly<S>& f, int trials, std::uint64_t seed);

// --- float mode -------------------------------------------------------------

struct FloatCubicClass {
    CubicKind kind;
    bool one_dimensional = false;
    std::vector<SingularPoint<Complex>> points;
    int jacobian_length = 0;  // tau: length of the singular scheme
    int line_conic_intersections = 0;
};

/// Numerical classification. Throws DomainError("ambiguous_near_tolerance")
/// when a rank or clustering decision sits too close to the tolerance.
FloatCubicClass classify_float(const MultiPoly<Complex>& f, double tol);

}  // namespace polycurve
