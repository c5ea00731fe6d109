#pragma once

// Canonical bundle formula arithmetic for elliptic fibrations X -> B over a
// curve of genus b, in the non-product case q = b.

#include "polycurve/errors.hpp"

#include <optional>
#include <string>
#include <vector>

namespace polycurve {

/// deg(delta) = chi - 2 + 2b.
long deg_delta(long chi, long b);

/// deg(2 K_B - delta) = 3b - 3 - p_g, using chi = 1 - b + p_g.
long special_tensor_degree(long b, long p_g);

enum class EffectivityStatus {
    Effective,           // degree >= b: every divisor class of that degree is effective
    Indeterminate,       // 0 <= degree < b: depends on the class
    NotEffective,        // negative degree
    OutsideHypotheses,   // p_g < b, i.e. chi < 1
};

struct SpecialTensorExistence {
    bool exists;  // b >= 3 and b <= p_g <= 2b - 3
    EffectivityStatus status;
    long degree;
    std::string reason;
};

SpecialTensorExistence exists_special_tensor(long b, long p_g);

/// Component multiplicities of one fiber; n_p is their gcd.
class FiberData {
public:
    explicit FiberData(std::vector<long> multiplicities);
    const std::vector<long>& multiplicities() const { return m_; }
    long n_p() const { return n_p_; }

private:
    std::vector<long> m_;
    long n_p_;
};

struct SaturationResult {
    bool ok;
    bool multiple_fiber;
    std::string trace;
};

/// Neither 2*S_hat nor S_m exceeds the fiber: throws DomainError when the
/// multiplicities cannot come from a Kodaira fiber.
SaturationResult fiber_saturation_check(const FiberData& f);

struct EllipticFibrationData {
    long b = 0;
    long chi = 0;
    long p_g = 0;
    bool q_equals_b = true;  // an input assumption, not inferred
    std::vector<long> multiple_fibers;
    std::vector<FiberData> fibers;

    void validate() const;
};

struct WeierstrassInstance {
    long h;
    long b;              // 6h + 1
    long deg_H = 2;      // the hyperelliptic g^1_2
    long deg_M;          // M = h H
    long deg_g2;         // g2 in H^0(O(4M))
    long deg_g3;         // g3 in H^0(O(6M))
    long deg_KB;         // 2b - 2
    long deg_6M;
    long tensor_space_dim;  // h0(K_B - 6M) = h0(O_B)
};

WeierstrassInstance weierstrass_instance(long h);

std::string to_string(EffectivityStatus s);

}  // namespace polycurve
