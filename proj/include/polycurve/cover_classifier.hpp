#pragma once

// Universal-cover verdicts for compact complex surfaces from numerical
// invariants, with partial data: every unknown field is carried as such and a
// rule fires only when all of its conditions are established.
//
// Rule order: Ball, HxH, P1xP1, then the Kaehler table (P1xC, P1xH, C2, CxH).

#include <optional>
#include <string>
#include <vector>

namespace polycurve {

enum class TensorStatus { None, SpecialUnique, SpecialNonUnique, SemiSpecialUniqueType, SemiSpecialOther, Unknown };

enum class Cover { P1xP1, P1xC, P1xH, C2, CxH, HxH, Ball, NoRuleApplies, Inconsistent };

std::string to_string(TensorStatus t);
std::string to_string(Cover c);
std::optional<TensorStatus> parse_tensor_status(const std::string& s);
std::optional<Cover> parse_cover(const std::string& s);

struct SurfaceInvariants {
    std::optional<long> K2, chi, q, p_g, P2, P12, e, h0_omega_mk;
    TensorStatus tensor_status = TensorStatus::Unknown;
    std::optional<bool> kaehler;
};

enum class Severity { Contradiction, Unverifiable, Info };
std::string to_string(Severity s);

struct Finding {
    Severity severity;
    std::string code;
    std::string message;
};

struct CoverVerdict {
    Cover cover;
    std::string fired_rule;                 // empty for NoRuleApplies / Inconsistent
    std::vector<std::string> missing_data;  // for NoRuleApplies: the unknowns of the closest rule
    std::vector<Finding> findings;
};

/// Fills a field determined by the others through chi = 1 + p_g - q or
/// Noether's formula 12 chi = K^2 + e.
SurfaceInvariants complete(const SurfaceInvariants& s);

CoverVerdict classify_surface(const SurfaceInvariants& s);

/// Necessary conditions for `claimed` (default: the classifier's own verdict)
/// plus the identity screens. An all-unknown record yields no findings.
std::vector<Finding> consistency_report(const SurfaceInvariants& s, std::optional<Cover> claimed = std::nullopt);

enum class ThreefoldCover { PolydiskH3, NoRuleApplies };
std::string to_string(ThreefoldCover c);

struct ThreefoldVerdict {
    ThreefoldCover cover;
    std::string note;
};

ThreefoldVerdict classify_threefold(bool tensor_present, bool k_ample);

}  // namespace polycurve
