#pragma once

#include "doctest.h"
#include "polycurve/poly_text.hpp"

namespace doctest {
template <polycurve::PolyScalar S>
struct StringMaker<polycurve::MultiPoly<S>> {
    static String convert(const polycurve::MultiPoly<S>& p) { return polycurve::to_string(p).c_str(); }
};
template <>
struct StringMaker<polycurve::Rational> {
    static String convert(const polycurve::Rational& q) { return q.get_str().c_str(); }
};
}  // namespace doctest

#include <random>

namespace testing_support {

/// Up to `terms` random monomials of total degree <= max_deg, integer coefficients in [-5, 5].
inline polycurve::MultiPoly<polycurve::Rational> random_poly(std::mt19937& rng, const std::vector<std::string>& vars,
                                                             int max_deg, int terms) {
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> deg(0, max_deg);
    polycurve::MultiPoly<polycurve::Rational> p(vars);
    for (int t = 0; t < terms; ++t) {
        polycurve::Exponent e(vars.size(), 0);
        int budget = deg(rng);
        for (std::size_t k = 0; k < vars.size() && budget > 0; ++k) {
            std::uniform_int_distribution<int> take(0, budget);
            e[k] = take(rng);
            budget -= e[k];
        }
        p.add_term(e, polycurve::Rational(coeff(rng)));
    }
    return p;
}

}  // namespace testing_support
