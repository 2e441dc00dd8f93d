#include "evpos/homogenize.hpp"

#include <algorithm>

namespace evpos {

namespace {

BigInt dot(const IntVec& u, const ExponentVector& m) {
    BigInt s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += BigInt(u[i]) * m[i];
    return s;
}

template <typename C>
C polarized_impl(const HomogenizedPolynomial& hp, const std::vector<C>& z, const std::vector<C>& w,
                 C (*conj_fn)(const C&)) {
    if (z.size() != w.size() || static_cast<int>(z.size()) != hp.ray_count())
        throw DimensionMismatchError("polarized evaluation needs two points over the rays");
    std::vector<C> prod(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) prod[i] = z[i] * conj_fn(w[i]);
    return hp.evaluate(prod);
}

Complex conj_c(const Complex& z) { return std::conj(z); }
QComplex conj_q(const QComplex& z) { return qconj(z); }

}  // namespace

Complex HomogenizedPolynomial::polarized(const std::vector<Complex>& z,
                                         const std::vector<Complex>& w) const {
    return polarized_impl<Complex>(*this, z, w, conj_c);
}

QComplex HomogenizedPolynomial::polarized(const std::vector<QComplex>& z,
                                          const std::vector<QComplex>& w) const {
    return polarized_impl<QComplex>(*this, z, w, conj_q);
}

LaurentPolynomial HomogenizedPolynomial::as_polynomial() const {
    LaurentPolynomial p(ray_count());
    for (const auto& t : terms_) p.add_term(t.exponents, t.coeff);
    return p;
}

LaurentPolynomial HomogenizedPolynomial::ray_derivative(int ray) const {
    return as_polynomial().derivative(ray);
}

LaurentPolynomial HomogenizedPolynomial::chart_polynomial(int cone_index) const {
    const MaximalCone& cone = fan_.cone(cone_index);
    LaurentPolynomial p(static_cast<int>(cone.rays.size()));
    ExponentVector e(cone.rays.size());
    for (const auto& t : terms_) {
        for (std::size_t j = 0; j < cone.rays.size(); ++j)
            e[j] = t.exponents[static_cast<std::size_t>(cone.rays[j])];
        p.add_term(e, t.coeff);
    }
    return p;
}

LaurentPolynomial HomogenizedPolynomial::chart_restriction(int cone_index,
                                                           const std::vector<int>& slot,
                                                           int ell) const {
    const MaximalCone& cone = fan_.cone(cone_index);
    const int n = fan_.dimension();
    if (static_cast<int>(slot.size()) != n)
        throw DimensionMismatchError("slot map must cover every cone position");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s : slot) {
        if (s < 0 || s >= n || seen[static_cast<std::size_t>(s)])
            throw std::invalid_argument("slot map is not a permutation");
        seen[static_cast<std::size_t>(s)] = true;
    }
    if (ell < 0 || ell > n) throw std::invalid_argument("live coordinate count out of range");

    LaurentPolynomial p(ell);
    ExponentVector e(static_cast<std::size_t>(ell));
    for (const auto& t : terms_) {
        bool survives = true;
        std::fill(e.begin(), e.end(), 0);
        for (int j = 0; j < n && survives; ++j) {
            Int exp = t.exponents[static_cast<std::size_t>(cone.rays[static_cast<std::size_t>(j)])];
            int src = slot[static_cast<std::size_t>(j)];
            if (src < ell)
                e[static_cast<std::size_t>(src)] = exp;
            else if (exp != 0)
                survives = false;  // that position is pinned to 0
        }
        if (survives) p.add_term(e, t.coeff);
    }
    return p;
}

LaurentPolynomial HomogenizedPolynomial::original_polynomial() const {
    LaurentPolynomial p(nvars_);
    for (const auto& t : terms_) p.add_term(t.point, t.coeff);
    return p;
}

HomogenizedPolynomial homogenize(const LaurentPolynomial& p, const LatticePolytope& P,
                                 const NormalFan& fan) {
    if (p.is_zero()) throw std::invalid_argument("cannot homogenize the zero polynomial");
    if (p.nvars() != P.ambient_dimension() || P.ambient_dimension() != fan.dimension())
        throw DimensionMismatchError("polynomial, polytope and fan dimensions disagree");

    LatticePolytope own = newton_polytope(p);
    if (!(own == P))
        throw std::invalid_argument("polytope is not the Newton polytope of the polynomial");
    if (!(fan.rays() == P.facets()))
        throw std::invalid_argument("fan is not the normal fan of the polytope");

    HomogenizedPolynomial hp(fan, P);
    hp.nvars_ = p.nvars();
    for (const auto& [m, c] : p.terms()) {
        HomogenizedTerm t;
        t.point = m;
        t.coeff = c;
        t.exponents.resize(static_cast<std::size_t>(fan.ray_count()));
        for (int r = 0; r < fan.ray_count(); ++r) {
            BigInt e = dot(fan.ray(r).normal, m) + fan.ray(r).offset;
            if (e < 0)
                throw std::logic_error("negative homogenized exponent; facet data inconsistent");
            t.exponents[static_cast<std::size_t>(r)] = e.convert_to<Int>();
        }
        hp.terms_.push_back(std::move(t));
    }
    return hp;
}

HomogenizedPolynomial homogenize(const LaurentPolynomial& p) {
    LatticePolytope P = newton_polytope(p);
    NormalFan fan = build_normal_fan(P);
    return homogenize(p, P, fan);
}

double functional_equation_residual(const HomogenizedPolynomial& hp, const std::vector<Complex>& g,
                                    const std::vector<Complex>& z) {
    if (g.size() != z.size()) throw DimensionMismatchError("group element and point sizes differ");
    std::vector<Complex> gz(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) gz[i] = g[i] * z[i];
    Complex lhs = hp.evaluate(gz);
    Complex rhs = offset_character(hp.fan(), g) * hp.evaluate(z);
    return std::abs(lhs - rhs) / (1.0 + std::abs(hp.evaluate(z)));
}

}  // namespace evpos
