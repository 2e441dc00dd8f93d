#pragma once

#include <vector>

#include "evpos/polytope.hpp"

namespace evpos {

struct MaximalCone {
    std::vector<int> rays;  // ray indices, increasing
    ExponentVector vertex;  // the vertex this cone is normal to
};

// Normal fan of a smooth full-dimensional lattice polytope.  Ray rho carries
// the facet data (u_rho, a_rho); cones are listed by increasing vertex.
class NormalFan {
public:
    int dimension() const { return n_; }
    int ray_count() const { return static_cast<int>(rays_.size()); }
    const std::vector<Facet>& rays() const { return rays_; }
    const Facet& ray(int r) const { return rays_.at(static_cast<std::size_t>(r)); }
    const std::vector<MaximalCone>& cones() const { return cones_; }
    const MaximalCone& cone(int s) const { return cones_.at(static_cast<std::size_t>(s)); }

    bool ray_in_cone(int cone_index, int ray_index) const;

private:
    friend NormalFan build_normal_fan(const LatticePolytope&);
    int n_ = 0;
    std::vector<Facet> rays_;
    std::vector<MaximalCone> cones_;
};

// Throws DegenerateInputError unless the polytope is full-dimensional and
// NonSmoothError unless it is smooth.
NormalFan build_normal_fan(const LatticePolytope& P);

// The 0/1 point with zeros exactly on the rays of the given cone.
IntVec distinguished_point(const NormalFan& fan, int cone_index);

template <typename S>
std::vector<S> distinguished_point_as(const NormalFan& fan, int cone_index) {
    IntVec e = distinguished_point(fan, cone_index);
    std::vector<S> out;
    out.reserve(e.size());
    for (Int x : e) out.push_back(S(static_cast<double>(x)));
    return out;
}

// True iff every maximal cone has some vanishing coordinate off its rays,
// i.e. the point lies in the vanishing locus cut out by the products over
// cone complements.  Zero means exactly zero.
bool in_irrelevant_set(const NormalFan& fan, const std::vector<Complex>& z);
bool in_irrelevant_set(const NormalFan& fan, const std::vector<double>& z);

// Basis of { b integer : sum_rho b_rho u_rho = 0 }, Hermite-reduced rows.
// The positive solutions of the multiplicative version of this system form
// the subgroup of the torus under which the homogenization transforms by a
// character.  Throws if the ray matrix has a nontrivial Smith invariant
// (cannot happen for fans of smooth polytopes).
struct RelationLattice {
    IntMat basis;  // rows of length ray_count
    int ray_count = 0;
};
RelationLattice relation_lattice(const NormalFan& fan);

// exp(sum_j params[j] * basis[j]) componentwise: a positive element of the
// relation subgroup.
std::vector<double> positive_group_element(const RelationLattice& lattice,
                                           const std::vector<double>& params);

// exp of a complex parameter vector; unitary elements come from purely
// imaginary parameters.
std::vector<Complex> group_element(const RelationLattice& lattice,
                                   const std::vector<Complex>& log_params);

// Coordinate inclusion of a chart: s lands on the cone's rays, 1 elsewhere.
template <typename S>
std::vector<S> chart_embedding(const NormalFan& fan, int cone_index, const std::vector<S>& s) {
    const MaximalCone& c = fan.cone(cone_index);
    if (s.size() != c.rays.size())
        throw DimensionMismatchError("chart point has wrong dimension");
    std::vector<S> z(static_cast<std::size_t>(fan.ray_count()), S(1));
    for (std::size_t j = 0; j < c.rays.size(); ++j)
        z[static_cast<std::size_t>(c.rays[j])] = s[j];
    return z;
}

// Group factor g and chart coordinates s with g * z = chart_embedding(s).
// Requires z nonzero off the cone's rays.  For positive real z the factor is
// positive real.
struct ChartNormalization {
    std::vector<Complex> group_factor;  // over rays
    std::vector<Complex> chart_point;   // over the cone's rays
};
ChartNormalization normalize_to_chart(const NormalFan& fan, int cone_index,
                                      const std::vector<Complex>& z);

enum class OrbitMembership { Yes, No, Borderline };

struct OrbitTestResult {
    OrbitMembership verdict;
    double residual;  // angular distance (radians) from the nearest orbit
};

// Decides whether z lies in the orbit of the nonnegative orthant under the
// unitary part of the relation subgroup.  Phases of zero coordinates are
// free; the residual measures how far the phase vector is from the set of
// realizable ones.  Verdicts: Yes below eps, Borderline in [eps, 10*eps],
// No above.
OrbitTestResult in_unitary_orbit_of_orthant(const NormalFan& fan, const std::vector<Complex>& z,
                                            double eps = 1e-9);

}  // namespace evpos
