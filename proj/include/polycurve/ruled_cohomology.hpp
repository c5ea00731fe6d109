#pragma once

// Sections of line bundles on Hirzebruch surfaces F_n. Sigma is the negative
// section (Sigma^2 = -n) and F a fiber, so pushing a Sigma + b F down to P^1
// gives the sum of O(b - i n) over i = 0..a.

#include <string>

namespace polycurve {

struct HirzebruchDivisor {
    int n = 0;
    int a = 0;  // coefficient of Sigma
    int b = 0;  // coefficient of F
};

long h0_line_bundle(const HirzebruchDivisor& d);

/// h0(2 Sigma + (n - 2) F): the space carrying nilpotent special tensors.
long special_tensor_space_dim(int n);

struct TangentSections {
    long h0;
    long relative;    // h0(2 Sigma + n F), vertical vector fields
    long base;        // h0(2 F), lifted from P^1
    long correction;  // rank of the connecting map into H^1 of the relative part
    bool non_minimal; // n = 1
};

/// h0(T) = h0(Omega^1(-K)) on F_n from the relative tangent sequence.
TangentSections h0_tangent(int n);

enum class RationalVerdictKind { Quadric, F2, FnNonUnique, F1Excluded };

struct RationalVerdict {
    RationalVerdictKind kind;
    long tensor_space_dim;
};

RationalVerdict rational_verdict(int n);

std::string to_string(RationalVerdictKind k);

}  // namespace polycurve
