#pragma once

#include <vector>

#include "evpos/fan.hpp"

namespace evpos {

struct HomogenizedTerm {
    ExponentVector point;      // lattice point m of the original polynomial
    Rational coeff;            // c_m
    ExponentVector exponents;  // <m, u_rho> + a_rho over rays, all nonnegative
};

// Homogenization of a Laurent polynomial with respect to the facet
// presentation of its Newton polytope: each term x^m becomes the monomial
// with exponent <m, u_rho> + a_rho in the ray variable z_rho.  Vertex terms
// are visible as the terms whose exponent vanishes on a maximal cone.
class HomogenizedPolynomial {
public:
    const NormalFan& fan() const { return fan_; }
    const LatticePolytope& polytope() const { return polytope_; }
    const std::vector<HomogenizedTerm>& terms() const { return terms_; }
    int ray_count() const { return fan_.ray_count(); }

    template <typename S>
    S evaluate(const std::vector<S>& z) const {
        if (static_cast<int>(z.size()) != ray_count())
            throw DimensionMismatchError("point has wrong number of ray coordinates");
        S total(0);
        for (const auto& t : terms_) {
            S v = scalar_from<S>(t.coeff);
            for (std::size_t r = 0; r < t.exponents.size(); ++r) {
                if (t.exponents[r] == 0) continue;  // 0^0 = 1 convention
                v = v * int_power(z[r], t.exponents[r]);
            }
            total = total + v;
        }
        return total;
    }

    // Sesquilinear extension: the value at the coordinatewise product of z
    // with the conjugate of w.  Restricting to w = z gives squared-modulus
    // weights.
    Complex polarized(const std::vector<Complex>& z, const std::vector<Complex>& w) const;
    QComplex polarized(const std::vector<QComplex>& z, const std::vector<QComplex>& w) const;

    // The homogenization as a plain polynomial in the ray variables.
    LaurentPolynomial as_polynomial() const;

    // Derivative with respect to one ray variable, as a polynomial over rays.
    LaurentPolynomial ray_derivative(int ray) const;

    // Substitutes 1 for every ray off the cone: a polynomial in the cone's
    // rays (in increasing ray order).
    LaurentPolynomial chart_polynomial(int cone_index) const;

    // Chart restriction with ell live coordinates: cone position j receives
    // variable s_{slot[j]} when slot[j] < ell and 0 otherwise.  slot must be
    // a permutation of 0..n-1.  With ell = n and the identity slot map this
    // is chart_polynomial up to variable order.
    LaurentPolynomial chart_restriction(int cone_index, const std::vector<int>& slot, int ell) const;

    // Recovers the input: sum of c_m x^m.
    LaurentPolynomial original_polynomial() const;

private:
    friend HomogenizedPolynomial homogenize(const LaurentPolynomial&, const LatticePolytope&,
                                            const NormalFan&);
    HomogenizedPolynomial(NormalFan fan, LatticePolytope polytope)
        : fan_(std::move(fan)), polytope_(std::move(polytope)) {}
    NormalFan fan_;
    LatticePolytope polytope_;
    std::vector<HomogenizedTerm> terms_;
    int nvars_ = 0;
};

// Checks that the polytope is the Newton polytope of p and the fan is its
// normal fan before building the homogenization.
HomogenizedPolynomial homogenize(const LaurentPolynomial& p, const LatticePolytope& P,
                                 const NormalFan& fan);

HomogenizedPolynomial homogenize(const LaurentPolynomial& p);

// Product of g_rho^{a_rho}: the character by which the homogenization
// transforms under the relation subgroup.
template <typename S>
S offset_character(const NormalFan& fan, const std::vector<S>& g) {
    if (static_cast<int>(g.size()) != fan.ray_count())
        throw DimensionMismatchError("group element has wrong number of ray coordinates");
    S out(1);
    for (int r = 0; r < fan.ray_count(); ++r)
        out = out * int_power(g[static_cast<std::size_t>(r)], fan.ray(r).offset);
    return out;
}

// |hp(g*z) - character(g) * hp(z)| / (1 + |hp(z)|), the relative defect of
// the transformation law at one pair.
double functional_equation_residual(const HomogenizedPolynomial& hp, const std::vector<Complex>& g,
                                    const std::vector<Complex>& z);

}  // namespace evpos
