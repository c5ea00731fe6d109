#pragma once

#include "polycurve/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polycurve {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded lexicographic order, largest first; variable order is declaration order.
struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

inline bool divides(const Exponent& d, const Exponent& e) {
    for (std::size_t k = 0; k < d.size(); ++k)
        if (d[k] > e[k]) return false;
    return true;
}

/// Sparse multivariate polynomial with coefficients in S.
///
/// Terms are kept in a map keyed by exponent vector under grlex order, so the
/// first entry is always the leading term. Zero coefficients are never stored.
template <PolyScalar S>
class MultiPoly {
public:
    using Scalar = S;
    using Traits = ScalarTraits<S>;
    using Terms = std::map<Exponent, S, GrlexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, const S& c) {
        MultiPoly p(std::move(vars));
        p.add_term(Exponent(p.nvars(), 0), c);
        return p;
    }

    static MultiPoly variable(std::vector<std::string> vars, const std::string& name) {
        MultiPoly p(std::move(vars));
        const auto k = p.index_of(name);
        if (!k) throw std::invalid_argument("unknown variable '" + name + "'");
        Exponent e(p.nvars(), 0);
        e[*k] = 1;
        p.add_term(e, Traits::one());
        return p;
    }

    static MultiPoly monomial(std::vector<std::string> vars, Exponent e, const S& c) {
        MultiPoly p(std::move(vars));
        if (e.size() != p.nvars()) throw std::invalid_argument("exponent length mismatch");
        p.add_term(e, c);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    std::optional<std::size_t> index_of(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - vars_.begin());
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && polycurve::total_degree(terms_.begin()->first) == 0);
    }

    S constant_term() const {
        auto it = terms_.find(Exponent(nvars(), 0));
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    /// -1 for the zero polynomial.
    int total_degree() const {
        return terms_.empty() ? -1 : polycurve::total_degree(terms_.begin()->first);
    }

    int degree(std::size_t var) const {
        int d = terms_.empty() ? -1 : 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    int degree(const std::string& name) const { return degree(require_index(name)); }

    /// Total degree shared by every term, if there is one.
    std::optional<int> homogeneous_degree() const {
        if (terms_.empty()) return std::nullopt;
        const int d = total_degree();
        for (const auto& [e, c] : terms_)
            if (polycurve::total_degree(e) != d) return std::nullopt;
        return d;
    }

    const Exponent& leading_exponent() const {
        if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
        return terms_.begin()->first;
    }
    const S& leading_coefficient() const {
        if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
        return terms_.begin()->second;
    }

    std::size_t require_index(const std::string& name) const {
        auto k = index_of(name);
        if (!k) throw std::invalid_argument("unknown variable '" + name + "'");
        return *k;
    }

    void add_term(const Exponent& e, const S& c) {
        if (Traits::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second)) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        adopt_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        adopt_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r(a.common_vars(b));
        const std::size_t n = r.nvars();
        Exponent e(n, 0);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t k = 0; k < n; ++k)
                    e[k] = (ea.empty() ? 0 : ea[k]) + (eb.empty() ? 0 : eb[k]);
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend MultiPoly operator*(const S& s, const MultiPoly& p) { return p.scaled(s); }
    friend MultiPoly operator*(const MultiPoly& p, const S& s) { return p.scaled(s); }

    MultiPoly scaled(const S& s) const {
        MultiPoly r(vars_);
        if (Traits::is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, c * s);
        return r;
    }

    MultiPoly pow(unsigned k) const {
        MultiPoly result = constant(vars_, Traits::one());
        MultiPoly base = *this;
        while (k) {
            if (k & 1u) result = result * base;
            k >>= 1u;
            if (k) base = base * base;
        }
        return result;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (a.terms_.empty()) return true;
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    /// Coefficient of var^k, as a polynomial free of var.
    MultiPoly coefficient(std::size_t var, int k) const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] != k) continue;
            Exponent f = e;
            f[var] = 0;
            r.add_term(f, c);
        }
        return r;
    }

    /// Coefficients c_0..c_d with p = sum c_k var^k.
    std::vector<MultiPoly> coefficients_in(std::size_t var) const {
        const int d = std::max(degree(var), 0);
        std::vector<MultiPoly> out(static_cast<std::size_t>(d) + 1, MultiPoly(vars_));
        for (const auto& [e, c] : terms_) {
            Exponent f = e;
            f[var] = 0;
            out[static_cast<std::size_t>(e[var])].add_term(f, c);
        }
        return out;
    }

    MultiPoly derivative(std::size_t var) const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent f = e;
            f[var] -= 1;
            r.add_term(f, c * S(e[var]));
        }
        return r;
    }

    S evaluate(std::span<const S> point) const {
        if (point.size() != nvars()) throw std::invalid_argument("evaluation point has wrong arity");
        S acc = Traits::zero();
        for (const auto& [e, c] : terms_) {
            S t = c;
            for (std::size_t k = 0; k < e.size(); ++k)
                for (int j = 0; j < e[k]; ++j) t *= point[k];
            acc += t;
        }
        return acc;
    }

    /// Leading coefficient scaled to one; zero stays zero.
    MultiPoly monic() const {
        if (terms_.empty()) return *this;
        return scaled(Traits::one() / leading_coefficient());
    }

    /// Re-expresses the polynomial over another variable list, matching by name.
    MultiPoly embed(const std::vector<std::string>& target) const {
        std::vector<std::size_t> map(nvars());
        for (std::size_t k = 0; k < nvars(); ++k) {
            auto it = std::find(target.begin(), target.end(), vars_[k]);
            map[k] = it == target.end() ? target.size() : static_cast<std::size_t>(it - target.begin());
        }
        MultiPoly r(target);
        for (const auto& [e, c] : terms_) {
            Exponent f(target.size(), 0);
            for (std::size_t k = 0; k < e.size(); ++k) {
                if (e[k] == 0) continue;
                if (map[k] == target.size())
                    throw std::invalid_argument("variable '" + vars_[k] + "' missing from target list");
                f[map[k]] += e[k];
            }
            r.add_term(f, c);
        }
        return r;
    }

private:
    // A default-constructed polynomial has no variables; it may join any list.
    std::vector<std::string> common_vars(const MultiPoly& o) const {
        if (vars_ == o.vars_) return vars_;
        if (vars_.empty() && is_constant()) return o.vars_;
        if (o.vars_.empty() && o.is_constant()) return vars_;
        throw std::invalid_argument("polynomials over different variable lists");
    }

    void adopt_vars(const MultiPoly& o) {
        auto v = common_vars(o);
        if (v != vars_) *this = embed_constant(v);
    }

    MultiPoly embed_constant(const std::vector<std::string>& v) const {
        return constant(v, constant_term_unchecked());
    }

    S constant_term_unchecked() const {
        return terms_.empty() ? Traits::zero() : terms_.begin()->second;
    }

    std::vector<std::string> vars_;
    Terms terms_;
};

}  // namespace polycurve
