#pragma once

#include <optional>

#include "evpos/homogenize.hpp"
#include "evpos/sampling.hpp"
#include "evpos/verdict.hpp"

namespace evpos {

// Exact rational evaluation at a point whose coordinates are dyadic doubles.
Rational evaluate_exact_at_dyadic(const LaurentPolynomial& f, const std::vector<double>& x);

struct FullyPositiveResult {
    bool fully_positive = false;
    std::optional<ExponentVector> first_failing;  // first lattice point (lex) with c <= 0
    Rational failing_coefficient{0};              // 0 for a gap in the support
    long long lattice_point_count = 0;
};

// Every lattice point of the Newton polytope must carry a strictly positive
// coefficient; missing points count as failures.
FullyPositiveResult is_fully_positive(const LaurentPolynomial& p);
FullyPositiveResult is_fully_positive(const LaurentPolynomial& p, const LatticePolytope& P);

// Exact value of the homogenization at each cone's distinguished point; this
// equals the coefficient at the cone's vertex.
std::vector<Rational> vertex_values(const HomogenizedPolynomial& hp);

// Exact test: the homogenization is positive at every distinguished point.
Verdict check_vertex_positivity(const HomogenizedPolynomial& hp);

// Semi-decision: the derivative in each ray variable is positive on the
// corresponding coordinate face of the orthant, off the vanishing locus.
// Certified when every restricted derivative has nonnegative coefficients
// and a positive constant term; refuted only on an exact rational witness.
Verdict check_boundary_derivative_positivity(const HomogenizedPolynomial& hp,
                                             const SamplerConfig& cfg);

// Semi-decision: |hp(z)| < hp(|z|) away from the vanishing locus and from
// the unitary-relation orbit of the orthant.  Certified when the coefficient
// test and the chart lattice-span conditions hold; counterexamples are
// re-verified at extended precision and must sit a safe angular distance off
// the excluded orbit.
Verdict check_modulus_dominance(const HomogenizedPolynomial& hp, const SamplerConfig& cfg);

// Semi-decision: hp > 0 on the closed orthant off the vanishing locus.
Verdict check_positive_on_orthant(const HomogenizedPolynomial& hp, const SamplerConfig& cfg);

struct PowerPositivityResult {
    std::optional<int> found_at;  // smallest k with p^j fully positive for all j in [k, k_max]
    int k_max = 0;
    int k_reached = 0;
    std::vector<char> bitmap;  // bitmap[k-1] == 1 iff p^k is fully positive
    bool budget_exceeded = false;
};

// Scans p, p^2, ..., p^k_max by incremental multiplication.  The budget
// bounds the total number of coefficient multiplications.
PowerPositivityResult find_positivity_threshold(const LaurentPolynomial& p, int k_max,
                                                long long budget);

}  // namespace evpos
