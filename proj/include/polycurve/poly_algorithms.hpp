#pragma once

#include "polycurve/multipoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polycurve {

template <PolyScalar S>
std::vector<MultiPoly<S>> partials(const MultiPoly<S>& p) {
    std::vector<MultiPoly<S>> out;
    out.reserve(p.nvars());
    for (std::size_t k = 0; k < p.nvars(); ++k) out.push_back(p.derivative(k));
    return out;
}

/// Quotient of p by d when d divides p exactly.
template <ExactScalar S>
std::optional<MultiPoly<S>> divide_exact(const MultiPoly<S>& p, const MultiPoly<S>& d) {
    if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
    MultiPoly<S> q(p.vars().empty() ? d.vars() : p.vars());
    MultiPoly<S> r = p;
    const Exponent& ld = d.leading_exponent();
    const S& lc = d.leading_coefficient();
    while (!r.is_zero()) {
        const Exponent& lr = r.leading_exponent();
        if (!divides(ld, lr)) return std::nullopt;
        Exponent e(lr.size());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = lr[k] - ld[k];
        auto t = MultiPoly<S>::monomial(r.vars(), e, r.leading_coefficient() / lc);
        q += t;
        r -= t * d;
    }
    return q;
}

template <ExactScalar S>
MultiPoly<S> divide_or_throw(const MultiPoly<S>& p, const MultiPoly<S>& d) {
    auto q = divide_exact(p, d);
    if (!q) throw std::logic_error("expected exact polynomial division");
    return *q;
}

/// Pseudo-remainder of a by b with respect to variable var.
template <ExactScalar S>
MultiPoly<S> pseudo_remainder(const MultiPoly<S>& a, const MultiPoly<S>& b, std::size_t var) {
    const int n = b.degree(var);
    const MultiPoly<S> lb = b.coefficient(var, n);
    MultiPoly<S> r = a;
    while (!r.is_zero() && r.degree(var) >= n) {
        const int dr = r.degree(var);
        Exponent e(r.nvars(), 0);
        e[var] = dr - n;
        auto shift = MultiPoly<S>::monomial(r.vars(), e, ScalarTraits<S>::one());
        r = lb * r - r.coefficient(var, dr) * shift * b;
    }
    return r;
}

template <ExactScalar S>
MultiPoly<S> gcd(const MultiPoly<S>& p, const MultiPoly<S>& q);

/// Gcd of the coefficients of p viewed as a polynomial in var (monic).
template <ExactScalar S>
MultiPoly<S> content(const MultiPoly<S>& p, std::size_t var) {
    MultiPoly<S> g(p.vars());
    for (const auto& c : p.coefficients_in(var)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

template <ExactScalar S>
MultiPoly<S> primitive_part(const MultiPoly<S>& p, std::size_t var) {
    if (p.is_zero()) return p;
    return divide_or_throw(p, content(p, var));
}

/// Greatest common divisor, normalized to leading coefficient one under grlex.
///
/// Recursive content / primitive-part scheme: pick the last variable either
/// argument depends on, split off contents (which are free of that variable,
/// so the recursion shrinks), then run a primitive pseudo-remainder sequence.
template <ExactScalar S>
MultiPoly<S> gcd(const MultiPoly<S>& p, const MultiPoly<S>& q) {
    if (p.is_zero()) return q.monic();
    if (q.is_zero()) return p.monic();
    const auto& vars = p.vars().empty() ? q.vars() : p.vars();
    if (p.is_constant() || q.is_constant()) return MultiPoly<S>::constant(vars, ScalarTraits<S>::one());

    std::optional<std::size_t> main;
    for (std::size_t k = vars.size(); k-- > 0;) {
        if (p.degree(k) > 0 || q.degree(k) > 0) {
            main = k;
            break;
        }
    }
    const std::size_t v = *main;

    const MultiPoly<S> cp = content(p, v);
    const MultiPoly<S> cq = content(q, v);
    const MultiPoly<S> c = gcd(cp, cq);

    MultiPoly<S> a = divide_or_throw(p, cp);
    MultiPoly<S> b = divide_or_throw(q, cq);
    if (a.degree(v) < b.degree(v)) std::swap(a, b);
    while (!b.is_zero()) {
        if (b.degree(v) == 0) {
            a = MultiPoly<S>::constant(vars, ScalarTraits<S>::one());
            break;
        }
        MultiPoly<S> r = pseudo_remainder(a, b, v);
        a = std::move(b);
        b = primitive_part(r, v);
    }
    return (primitive_part(a, v) * c).monic();
}

/// Exact square root: r with r*r == p, or nothing when p is not a square.
///
/// The root is chosen with the principal square root of the leading
/// coefficient, so the result is determined up to the sign convention.
template <ExactScalar S>
std::optional<MultiPoly<S>> poly_sqrt(const MultiPoly<S>& p) {
    if (p.is_zero()) return p;
    const Exponent& le = p.leading_exponent();
    Exponent half(le.size());
    for (std::size_t k = 0; k < le.size(); ++k) {
        if (le[k] % 2 != 0) return std::nullopt;
        half[k] = le[k] / 2;
    }
    auto lc = ScalarTraits<S>::sqrt(p.leading_coefficient());
    if (!lc) return std::nullopt;

    MultiPoly<S> r = MultiPoly<S>::monomial(p.vars(), half, *lc);
    const S two_lc = *lc * S(2);
    // Each step kills the leading term of p - r^2; its leading monomial
    // strictly decreases in a well-order, so the loop terminates.
    for (;;) {
        MultiPoly<S> rem = p - r * r;
        if (rem.is_zero()) return r;
        const Exponent& lr = rem.leading_exponent();
        if (!divides(half, lr)) return std::nullopt;
        Exponent e(lr.size());
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = lr[k] - half[k];
        if (!GrlexGreater{}(half, e)) return std::nullopt;
        r += MultiPoly<S>::monomial(p.vars(), e, rem.leading_coefficient() / two_lc);
    }
}

/// Writes p = unit * r^2 with r monic, if the monic part of p is a square.
template <ExactScalar S>
std::optional<std::pair<S, MultiPoly<S>>> sqrt_up_to_unit(const MultiPoly<S>& p) {
    if (p.is_zero()) return std::pair{ScalarTraits<S>::zero(), p};
    const S unit = p.leading_coefficient();
    auto r = poly_sqrt(p.monic());
    if (!r) return std::nullopt;
    return std::pair{unit, r->monic()};
}

/// Determinant of a square matrix of polynomials by fraction-free elimination.
template <ExactScalar S>
MultiPoly<S> bareiss_determinant(std::vector<std::vector<MultiPoly<S>>> m,
                                 const std::vector<std::string>& vars) {
    const std::size_t n = m.size();
    if (n == 0) return MultiPoly<S>::constant(vars, ScalarTraits<S>::one());
    bool negate = false;
    MultiPoly<S> prev = MultiPoly<S>::constant(vars, ScalarTraits<S>::one());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return MultiPoly<S>(vars);
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly<S> t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = divide_or_throw(t, prev);
            }
            m[i][k] = MultiPoly<S>(vars);
        }
        prev = m[k][k];
    }
    MultiPoly<S> det = m[n - 1][n - 1];
    return negate ? -det : det;
}

/// Sylvester matrix of p and q with respect to var (rows of p first).
template <ExactScalar S>
std::vector<std::vector<MultiPoly<S>>> sylvester_matrix(const MultiPoly<S>& p, const MultiPoly<S>& q,
                                                        std::size_t var) {
    const int m = std::max(p.degree(var), 0);
    const int n = std::max(q.degree(var), 0);
    const std::size_t size = static_cast<std::size_t>(m + n);
    const auto& vars = p.vars();
    std::vector<std::vector<MultiPoly<S>>> mat(size, std::vector<MultiPoly<S>>(size, MultiPoly<S>(vars)));
    const auto pc = p.coefficients_in(var);
    const auto qc = q.coefficients_in(var);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) mat[r][r + m - k] = pc[k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) mat[n + r][r + n - k] = qc[k];
    return mat;
}

/// Sylvester resultant eliminating var.
template <ExactScalar S>
MultiPoly<S> resultant(const MultiPoly<S>& p, const MultiPoly<S>& q, const std::string& var) {
    const std::size_t v = p.require_index(var);
    if (q.vars() != p.vars()) throw std::invalid_argument("resultant operands over different variables");
    if (p.is_zero() || q.is_zero()) return MultiPoly<S>(p.vars());
    return bareiss_determinant(sylvester_matrix(p, q, v), p.vars());
}

/// Composition p(bindings). The result lives on `target` when given; otherwise
/// on p's variables followed by any new names the replacements introduce.
template <PolyScalar S>
MultiPoly<S> substitute(const MultiPoly<S>& p, const std::map<std::string, MultiPoly<S>>& bindings,
                        std::optional<std::vector<std::string>> target = std::nullopt) {
    std::vector<std::string> vars;
    if (target) {
        vars = *target;
    } else {
        vars = p.vars();
        for (const auto& [name, rep] : bindings)
            for (const auto& v : rep.vars())
                if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    std::vector<MultiPoly<S>> images;
    images.reserve(p.nvars());
    for (const auto& name : p.vars()) {
        auto it = bindings.find(name);
        if (it != bindings.end()) {
            images.push_back(it->second.embed(vars));
        } else if (std::find(vars.begin(), vars.end(), name) != vars.end()) {
            images.push_back(MultiPoly<S>::variable(vars, name));
        } else {
            images.emplace_back(vars);  // only acceptable when p never uses it
        }
    }
    std::vector<std::vector<MultiPoly<S>>> powers(p.nvars());
    MultiPoly<S> out(vars);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly<S> t = MultiPoly<S>::constant(vars, c);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (images[k].is_zero() && !bindings.contains(p.vars()[k]) &&
                std::find(vars.begin(), vars.end(), p.vars()[k]) == vars.end())
                throw std::invalid_argument("variable '" + p.vars()[k] + "' has no image");
            auto& pw = powers[k];
            if (pw.empty()) pw.push_back(MultiPoly<S>::constant(vars, ScalarTraits<S>::one()));
            while (static_cast<int>(pw.size()) <= e[k]) pw.push_back(pw.back() * images[k]);
            t = t * pw[static_cast<std::size_t>(e[k])];
        }
        out += t;
    }
    return out;
}

}  // namespace polycurve
