#include "polycurve/tensor_endo.hpp"

#include <algorithm>

namespace polycurve {

namespace {

using QPoly = MultiPoly<Rational>;

// Quotient of polynomials; no cancellation is attempted, n is at most 3.
struct RatFunc {
    QPoly num, den;

    friend RatFunc operator*(const RatFunc& p, const RatFunc& q) { return {p.num * q.num, p.den * q.den}; }
    friend RatFunc operator+(const RatFunc& p, const RatFunc& q) {
        return {p.num * q.den + q.num * p.den, p.den * q.den};
    }
};

}  // namespace

int permutation_sign(const std::vector<int>& perm) {
    int s = 1;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) s = -s;
    }
    return s;
}

Rational product_tensor_sign(int n, const std::vector<int>& perm, const std::vector<Mobius>& maps) {
    if (n != 2 && n != 3) throw DomainError("bad_dimension", "product tensor sign needs n = 2 or 3");
    if (perm.size() != static_cast<std::size_t>(n) || maps.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("permutation and map list must have length n");
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (sorted[static_cast<std::size_t>(i)] != i) throw std::invalid_argument("not a permutation of 0..n-1");
    for (const auto& f : maps)
        if (sgn(f.det()) == 0) throw DomainError("non_invertible_map", "Mobius map has zero determinant");

    std::vector<std::string> vars;
    for (int i = 1; i <= n; ++i) vars.push_back("z" + std::to_string(i));
    const auto zero = RatFunc{QPoly(vars), QPoly::constant(vars, 1)};

    // J[i][j] = d F_i / d z_j, with F_i = f_i(z_{perm[i]}) and
    // f'(z) = det f / (gamma z + delta)^2.
    std::vector<std::vector<RatFunc>> jac(static_cast<std::size_t>(n), std::vector<RatFunc>(static_cast<std::size_t>(n), zero));
    for (std::size_t i = 0; i < jac.size(); ++i) {
        const auto& f = maps[i];
        const auto j = static_cast<std::size_t>(perm[i]);
        const QPoly lin = QPoly::variable(vars, vars[j]).scaled(f.gamma) + QPoly::constant(vars, f.delta);
        jac[i][j] = {QPoly::constant(vars, f.det()), lin * lin};
    }

    // Leibniz expansion of both the permanent and the determinant.
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    RatFunc per = zero, det = zero;
    do {
        RatFunc term{QPoly::constant(vars, 1), QPoly::constant(vars, 1)};
        for (std::size_t i = 0; i < sigma.size(); ++i) term = term * jac[i][static_cast<std::size_t>(sigma[i])];
        per = per + term;
        det = det + (permutation_sign(sigma) > 0 ? term : RatFunc{-term.num, term.den});
    } while (std::next_permutation(sigma.begin(), sigma.end()));

    const auto ratio = divide_exact(per.num * det.den, det.num * per.den);
    if (!ratio || !ratio->is_constant()) throw std::logic_error("pullback ratio is not a constant");
    return ratio->constant_term();
}

}  // namespace polycurve
