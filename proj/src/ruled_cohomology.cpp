#include "polycurve/ruled_cohomology.hpp"

#include "polycurve/errors.hpp"

#include <stdexcept>

namespace polycurve {

namespace {

void require_n(int n) {
    if (n < 0) throw DomainError("negative_n", "Hirzebruch index n must be nonnegative");
}

}  // namespace

long h0_line_bundle(const HirzebruchDivisor& d) {
    require_n(d.n);
    long total = 0;
    for (long i = 0; i <= d.a; ++i) {
        const long deg = static_cast<long>(d.b) - i * d.n;
        if (deg < 0) break;  // degrees only decrease from here
        total += deg + 1;
    }
    return total;
}

long special_tensor_space_dim(int n) { return h0_line_bundle({n, 2, n - 2}); }

TangentSections h0_tangent(int n) {
    require_n(n);
    TangentSections t{};
    t.relative = h0_line_bundle({n, 2, n});
    t.base = h0_line_bundle({n, 0, 2});
    // Every vector field on P^1 lifts (F_n is a projectivized split bundle),
    // so H^0 of the tangent sheaf surjects onto the base part.
    t.correction = 0;
    t.h0 = t.relative + t.base - t.correction;
    t.non_minimal = n == 1;
    const long closed = n == 0 ? 6 : n + 5;
    if (t.h0 != closed) throw std::logic_error("tangent section count disagrees with the closed form");
    return t;
}

RationalVerdict rational_verdict(int n) {
    require_n(n);
    const long dim = special_tensor_space_dim(n);
    if (n == 0) return {RationalVerdictKind::Quadric, dim};
    if (n == 1) return {RationalVerdictKind::F1Excluded, dim};
    if (n == 2) return {RationalVerdictKind::F2, dim};
    return {RationalVerdictKind::FnNonUnique, dim};
}

std::string to_string(RationalVerdictKind k) {
    switch (k) {
        case RationalVerdictKind::Quadric: return "Quadric";
        case RationalVerdictKind::F2: return "F2";
        case RationalVerdictKind::FnNonUnique: return "FnNonUnique";
        case RationalVerdictKind::F1Excluded: return "F1Excluded";
    }
    return "?";
}

}  // namespace polycurve
