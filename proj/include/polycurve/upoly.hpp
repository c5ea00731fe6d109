#pragma once

// Dense univariate polynomials over an exact field, for the elimination steps
// that reduce everything to one variable.

#include "polycurve/multipoly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace polycurve {

template <ExactScalar S>
class UPoly {
public:
    using Traits = ScalarTraits<S>;

    UPoly() = default;
    explicit UPoly(std::vector<S> c) : c_(std::move(c)) { trim(); }

    static UPoly constant(const S& s) { return UPoly(std::vector<S>{s}); }
    static UPoly x() { return UPoly(std::vector<S>{Traits::zero(), Traits::one()}); }

    /// Requires p to involve no variable other than var.
    static UPoly from_multi(const MultiPoly<S>& p, std::size_t var) {
        std::vector<S> c(static_cast<std::size_t>(std::max(p.degree(var), 0)) + 1, Traits::zero());
        for (const auto& [e, v] : p.terms()) {
            for (std::size_t k = 0; k < e.size(); ++k)
                if (k != var && e[k] != 0) throw std::invalid_argument("polynomial is not univariate");
            c[static_cast<std::size_t>(e[var])] = v;
        }
        return UPoly(std::move(c));
    }

    MultiPoly<S> to_multi(const std::vector<std::string>& vars, std::size_t var) const {
        MultiPoly<S> p(vars);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            Exponent e(vars.size(), 0);
            e[var] = static_cast<int>(k);
            p.add_term(e, c_[k]);
        }
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<S>& coeffs() const { return c_; }
    S coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Traits::zero(); }
    const S& lead() const { return c_.back(); }

    S operator()(const S& x) const {
        S acc = Traits::zero();
        for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
        return acc;
    }

    UPoly monic() const { return is_zero() ? *this : scaled(Traits::one() / lead()); }

    UPoly scaled(const S& s) const {
        std::vector<S> c = c_;
        for (auto& v : c) v *= s;
        return UPoly(std::move(c));
    }

    UPoly derivative() const {
        std::vector<S> c;
        for (std::size_t k = 1; k < c_.size(); ++k) c.push_back(c_[k] * S(static_cast<long>(k)));
        return UPoly(std::move(c));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<S> c(std::max(a.c_.size(), b.c_.size()), Traits::zero());
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + b.scaled(-Traits::one()); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<S> c(a.c_.size() + b.c_.size() - 1, Traits::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Quotient and remainder.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
        std::vector<S> r = c_;
        const int n = d.degree();
        if (degree() < n) return {UPoly(), *this};
        std::vector<S> q(static_cast<std::size_t>(degree() - n) + 1, Traits::zero());
        for (int k = degree(); k >= n; --k) {
            const S t = r[static_cast<std::size_t>(k)] / d.lead();
            q[static_cast<std::size_t>(k - n)] = t;
            for (int j = 0; j <= n; ++j) r[static_cast<std::size_t>(k - n + j)] -= t * d.c_[static_cast<std::size_t>(j)];
        }
        r.resize(static_cast<std::size_t>(n));
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) { return a.divmod(b).second; }

    /// Monic gcd; zero only when both arguments are zero.
    friend UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Inverse of a modulo m, if gcd(a, m) = 1.
    friend std::optional<UPoly> inverse_mod(const UPoly& a, const UPoly& m) {
        UPoly r0 = m, r1 = a % m, t0, t1 = constant(Traits::one());
        while (!r1.is_zero()) {
            auto [q, r] = r0.divmod(r1);
            UPoly t = t0 - q * t1;
            r0 = std::move(r1);
            r1 = std::move(r);
            t0 = std::move(t1);
            t1 = std::move(t);
        }
        if (r0.degree() != 0) return std::nullopt;
        return (t0.scaled(Traits::one() / r0.lead())) % m;
    }

    UPoly squarefree_part() const {
        if (degree() <= 0) return monic();
        return divmod(gcd(*this, derivative())).first.monic();
    }

private:
    void trim() {
        while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<S> c_;
};

}  // namespace polycurve
