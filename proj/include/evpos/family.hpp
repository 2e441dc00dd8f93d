#pragma once

#include "evpos/laurent.hpp"

namespace evpos {

// (1+x)^(2*ell) - lambda * x^ell in one variable.
inline LaurentPolynomial make_family_factor(int ell, const Rational& lambda) {
    if (ell < 1) throw std::invalid_argument("ell must be at least 1");
    LaurentPolynomial one_plus_x =
        LaurentPolynomial::constant(1, 1) + LaurentPolynomial::variable(1, 0);
    LaurentPolynomial p = one_plus_x.pow(2 * ell);
    LaurentPolynomial spike = LaurentPolynomial::monomial(1, ExponentVector{ell}, lambda);
    return p - spike;
}

// Product of two such factors in separate variables: the two-parameter test
// family on the square [0, 2*ell]^2.
inline LaurentPolynomial make_family_product(int ell, const Rational& lambda1,
                                             const Rational& lambda2) {
    if (ell < 1) throw std::invalid_argument("ell must be at least 1");
    auto lift = [&](const LaurentPolynomial& f, int var) {
        LaurentPolynomial out(2);
        for (const auto& [m, c] : f.terms()) {
            ExponentVector e(2, 0);
            e[static_cast<std::size_t>(var)] = m[0];
            out.add_term(e, c);
        }
        return out;
    };
    return lift(make_family_factor(ell, lambda1), 0) * lift(make_family_factor(ell, lambda2), 1);
}

}  // namespace evpos
