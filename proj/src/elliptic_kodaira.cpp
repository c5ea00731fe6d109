#include "polycurve/elliptic_kodaira.hpp"

#include "polycurve/errors.hpp"

#include <algorithm>
#include <numeric>

namespace polycurve {

long deg_delta(long chi, long b) { return chi - 2 + 2 * b; }

long special_tensor_degree(long b, long p_g) { return 3 * b - 3 - p_g; }

SpecialTensorExistence exists_special_tensor(long b, long p_g) {
    SpecialTensorExistence r{};
    r.degree = special_tensor_degree(b, p_g);
    r.exists = b >= 3 && b <= p_g && p_g <= 2 * b - 3;
    if (p_g < b)
        r.status = EffectivityStatus::OutsideHypotheses;
    else if (r.degree >= b)
        r.status = EffectivityStatus::Effective;
    else if (r.degree < 0)
        r.status = EffectivityStatus::NotEffective;
    else
        r.status = EffectivityStatus::Indeterminate;

    const std::string deg = "deg(2K_B - delta) = " + std::to_string(r.degree);
    if (r.exists)
        r.reason = "b <= p_g <= 2b - 3 with b >= 3; " + deg + " >= b forces effectivity";
    else if (b < 3)
        r.reason = "b = " + std::to_string(b) + " < 3, the window b <= p_g <= 2b - 3 is empty";
    else if (p_g < b)
        r.reason = "p_g = " + std::to_string(p_g) + " < b = " + std::to_string(b) + " (chi < 1)";
    else
        r.reason = "p_g = " + std::to_string(p_g) + " > 2b - 3 = " + std::to_string(2 * b - 3) + "; " + deg +
                   (r.degree < 0 ? " is negative" : " < b, effectivity depends on the class");
    return r;
}

FiberData::FiberData(std::vector<long> multiplicities) : m_(std::move(multiplicities)), n_p_(0) {
    if (m_.empty()) throw DomainError("bad_fiber", "fiber needs at least one component");
    for (long m : m_) {
        if (m < 1) throw DomainError("bad_fiber", "component multiplicities must be positive");
        n_p_ = std::gcd(n_p_, m);
    }
    if (n_p_ > 1 && std::any_of(m_.begin(), m_.end(), [&](long m) { return m != n_p_; }))
        throw DomainError("bad_fiber", "multiple fiber with unequal component multiplicities (need m_i = n_p for all i)");
}

SaturationResult fiber_saturation_check(const FiberData& f) {
    const long n = f.n_p();
    if (n > 1) {
        return {true, true,
                "multiple fiber F = " + std::to_string(n) + "F': S_m = " + std::to_string(n - 1) + "F' < " +
                    std::to_string(n) + "F' = F, and 2*S_hat = 0"};
    }
    const auto& m = f.multiplicities();
    const auto it = std::find(m.begin(), m.end(), 1L);
    if (it == m.end())
        throw DomainError("bad_fiber", "non-multiple fiber without a reduced component is not a Kodaira fiber");
    return {true, false,
            "component " + std::to_string(it - m.begin()) + " has m_i = 1 and 2(m_i - 1) = 0 < 1, so 2*S_hat >= F fails"};
}

void EllipticFibrationData::validate() const {
    if (b < 0) throw DomainError("bad_fibration", "base genus must be nonnegative");
    if (q_equals_b && chi != 1 - b + p_g)
        throw DomainError("bad_fibration", "chi = " + std::to_string(chi) + " but 1 - b + p_g = " +
                                               std::to_string(1 - b + p_g) + " (q = b assumed)");
    for (long n : multiple_fibers)
        if (n < 2) throw DomainError("bad_fibration", "multiple fiber multiplicities must be >= 2");
}

WeierstrassInstance weierstrass_instance(long h) {
    if (h < 1) throw DomainError("bad_weierstrass", "h must be at least 1");
    WeierstrassInstance w{};
    w.h = h;
    w.b = 6 * h + 1;
    w.deg_H = 2;
    w.deg_M = h * w.deg_H;
    w.deg_g2 = 4 * w.deg_M;
    w.deg_g3 = 6 * w.deg_M;
    w.deg_KB = 2 * w.b - 2;
    w.deg_6M = 6 * w.deg_M;
    // On a hyperelliptic curve K_B = (b - 1) H as a class, and b - 1 = 6h, so
    // K_B - 6M is trivial rather than merely of degree zero.
    if (w.deg_KB != w.deg_6M || (w.b - 1) != 6 * h) throw std::logic_error("Weierstrass degree balance failed");
    w.tensor_space_dim = 1;
    return w;
}

std::string to_string(EffectivityStatus s) {
    switch (s) {
        case EffectivityStatus::Effective: return "Effective";
        case EffectivityStatus::Indeterminate: return "Indeterminate";
        case EffectivityStatus::NotEffective: return "NotEffective";
        case EffectivityStatus::OutsideHypotheses: return "OutsideHypotheses";
    }
    return "?";
}

}  // namespace polycurve
