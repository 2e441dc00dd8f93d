#pragma once

#include <Eigen/Dense>

#include "evpos/homogenize.hpp"
#include "evpos/sampling.hpp"
#include "evpos/verdict.hpp"

namespace evpos {

// Hessian of log f at a positive point s, expressed through the weighted
// moment matrix: entry (i,j) is s_i s_j (f_ij f - f_i f_j) / f^2 plus the
// diagonal correction s_i f_i / f.  Equals the Hessian of t -> log f(e^t) at
// t = log s.
Eigen::MatrixXd log_hessian(const LaurentPolynomial& f, const std::vector<double>& s);

// Hessian of t -> log f(e^t) directly at t; log_hessian(f, exp(t)) agrees.
Eigen::MatrixXd log_hessian_exp_coords(const LaurentPolynomial& f, const std::vector<double>& t);

// Central finite difference of the same map, step h per coordinate pair.
Eigen::MatrixXd log_hessian_finite_difference(const LaurentPolynomial& f,
                                              const std::vector<double>& t, double h = 1e-4);

// True iff the differences of support points span the full integer lattice
// of the polynomial's variable space (Smith form is the identity).  On an
// affine line this is exactly when the exponents have gcd 1 after centering.
bool lattice_span_check(const LaurentPolynomial& f);

// Semi-decision: the log-Hessian is positive definite at every sampled
// positive point.  When the support differences span a proper sublattice the
// matrix is singular in the quotient directions; the check then reports
// Inconclusive with a note instead of hunting for counterexamples.
// Counterexamples are verified by exact leading principal minors at the
// dyadic sample point.
Verdict check_positive_definite_on_samples(const LaurentPolynomial& f, const SamplerConfig& cfg);

// Exact one-dimensional check along rays through positive rational points:
// r -> f(s * r^w) must be strictly increasing and log-convex in r for the
// sampled directions w with nonnegative entries.  Uses rational midpoints of
// the form s' = s * r^2 so every comparison is exact.
Verdict check_monotone_logconvex(const LaurentPolynomial& f, const SamplerConfig& cfg);

// Semi-decision for the polarized form: |F(z, w)|^2 <= F(z, z) * F(w, w)
// must fail strictly for generic pairs only when z and w sit in the same
// orbit; the check samples pairs, verifies candidate equalities at extended
// precision, and confirms that deliberately orbit-related pairs do achieve
// equality.
Verdict check_pairwise_cauchy_schwarz(const HomogenizedPolynomial& hp, const SamplerConfig& cfg);

// Max relative disagreement between the moment form and the finite
// difference Hessian over a few random positive points; a smoke test used by
// the report pipeline.
double hessian_consistency_sample(const LaurentPolynomial& f, std::uint64_t seed, int points);

}  // namespace evpos
