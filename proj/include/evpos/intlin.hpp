#pragma once

#include <vector>

#include "evpos/rational.hpp"

namespace evpos {

using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

// All routines work internally over arbitrary-precision integers; the Int
// interfaces are for the small matrices that show up here (ambient dimension
// at most a handful, entries of modest size).

int integer_rank(const IntMat& a);

BigInt integer_determinant(const IntMat& a);

// gcd of the absolute values of the entries; 0 for the zero vector.
Int content(const IntVec& v);

// v divided by its content.  Requires v != 0.
IntVec primitive(const IntVec& v);

// Basis (as rows) of { x : a x = 0 } over the integers, Hermite-reduced so
// the result is canonical.  `a` has any number of rows, all of length c;
// an empty row list is allowed and yields the standard basis of Z^c.
IntMat integer_kernel_basis(const IntMat& a, int c);

// Row-style Hermite normal form of the lattice generated by the rows.
// Pivots are positive, entries above a pivot are reduced to [0, pivot).
// Zero rows are dropped.  Canonical for lattice equality tests.
IntMat hermite_row_basis(IntMat rows);

// Nonzero diagonal of the Smith normal form, in divisibility order.
std::vector<BigInt> smith_diagonal(const IntMat& a);

}  // namespace evpos
