#pragma once

#include <Eigen/Dense>

#include "evpos/laurent.hpp"
#include "evpos/verdict.hpp"

namespace evpos {

// Square matrix whose entries are polynomials with nonnegative exponents and
// nonnegative integer coefficients.  Irreducibility and aperiodicity are
// properties of the digraph with an edge i -> j exactly when the (i,j) entry
// is a nonzero polynomial.
class PolyMatrix {
public:
    PolyMatrix(int size, int nvars);

    static PolyMatrix from_entries(std::vector<std::vector<LaurentPolynomial>> entries);

    int size() const { return size_; }
    int nvars() const { return nvars_; }
    const LaurentPolynomial& entry(int i, int j) const;
    void set_entry(int i, int j, LaurentPolynomial p);

    // Entrywise evaluation; nonnegative for nonnegative x by construction.
    Eigen::MatrixXd evaluate(const std::vector<double>& x) const;

private:
    int size_ = 0;
    int nvars_ = 0;
    std::vector<LaurentPolynomial> entries_;  // row-major
};

// Strong connectivity through paths of length >= 1: for every ordered pair
// (i, j) some power of the matrix has a nonzero (i, j) entry.  A 1x1 matrix
// is irreducible exactly when its entry is nonzero.
bool is_irreducible(const PolyMatrix& a);

// gcd of directed cycle lengths equals 1.  Throws std::invalid_argument on a
// reducible matrix.
bool is_aperiodic(const PolyMatrix& a);

struct SpectralRadiusResult {
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    double gershgorin_lower = 0.0;  // min and max row sums of the evaluated matrix
    double gershgorin_upper = 0.0;
};

// Perron root of the matrix evaluated at the positive point x, via power
// iteration on the diagonally shifted matrix (the shift makes the iteration
// converge for periodic digraphs too).  The Collatz-Wielandt bracket width
// under tol stops the iteration.
SpectralRadiusResult spectral_radius_at(const PolyMatrix& a, const std::vector<double>& x,
                                        double tol = 1e-12, int max_iter = 100000);

// Samples positive points and compares the spectral radius against beta
// there.  A mismatch beyond tol (relative) refutes; for a 1x1 matrix whose
// entry equals beta symbolically the identity is certified.
Verdict verify_beta_equals(const PolyMatrix& a, const LaurentPolynomial& beta, int sample_points,
                           double tol, std::uint64_t seed);

}  // namespace evpos
